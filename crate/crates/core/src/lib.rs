//! Sparse-to-dense LIDAR depth completion with classical image processing.
//!
//! A projected LIDAR scan covers only a few percent of the camera frame.
//! [`complete`] fills it in with a fixed sequence of morphological
//! operations on an inverted depth encoding, then smooths the result. It
//! needs no training data and no RGB image, and runs in a few milliseconds
//! per KITTI frame on one CPU core.
//!
//! ```
//! use depthfill::{complete, DepthMap, PipelineConfig};
//!
//! let mut sparse = DepthMap::new(64, 32).unwrap();
//! let mut values = sparse.into_values();
//! values[20 * 64 + 10] = 12.5;
//! values[25 * 64 + 40] = 30.0;
//! let sparse = DepthMap::from_vec(64, 32, values).unwrap();
//!
//! let dense = complete(&sparse, &PipelineConfig::default()).unwrap();
//! assert_eq!(dense.density(), 1.0);
//! ```

mod buffer;
pub mod depth;
pub mod error;
pub mod io;
pub mod kernel;
pub mod metrics;
pub mod morphology;
pub mod pipeline;
pub mod synthetic;

pub use depth::{DepthMap, Encoding, ValidityMask, INVERSION_OFFSET, VALIDITY_THRESHOLD};
pub use error::{Error, Result};
pub use kernel::{Kernel, KernelShape};
pub use metrics::{evaluate, ErrorAccumulator, MetricsReport};
pub use pipeline::{
    complete, complete_with_stats, complete_with_trace, BlurMode, FillMode, PipelineConfig,
    RunStats, Stage, StageTiming,
};
