//! Fixtures shared by the benchmarks.

use depthfill::morphology::dilate;
use depthfill::synthetic;
use depthfill::{DepthMap, Kernel, KernelShape};

/// A synthetic sparse frame at KITTI resolution (1242x375, ~5% density).
pub fn kitti_sparse() -> DepthMap {
    synthetic::kitti_frame(0).sparse
}

/// The KITTI-size frame after inversion and a 5x5 diamond dilation: the
/// mix of empty and valid pixels the later stages see.
pub fn kitti_dilated() -> DepthMap {
    let inverted = kitti_sparse().invert().expect("synthetic depths are invertible");
    dilate(&inverted, &Kernel::new(KernelShape::Diamond, 5).expect("valid kernel"))
}
