//! Procedural LIDAR-like frames for benchmarks, demos and tests.
//!
//! The scene is a ground plane receding to a horizon at one third of the
//! image height, with a few box-shaped obstacles in front of it. The sparse
//! map samples it along horizontal scan lines in the lower two thirds of
//! the frame, roughly every fourth row and column, which puts the density
//! of that region in the 5-7% band typical of projected 64-beam scans.

use crate::depth::DepthMap;

/// KITTI camera frame size.
pub const KITTI_WIDTH: usize = 1242;
pub const KITTI_HEIGHT: usize = 375;

/// SplitMix64; enough randomness for scene layout and jitter.
#[derive(Debug, Clone)]
pub struct SplitMix(u64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f32(&mut self) -> f32 {
        (self.next_u64() >> 40) as f32 / (1u64 << 24) as f32
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// A generated frame: the sparse input and a semi-dense ground truth.
#[derive(Debug, Clone)]
pub struct Frame {
    pub sparse: DepthMap,
    pub ground_truth: DepthMap,
}

struct Obstacle {
    x0: usize,
    x1: usize,
    y0: usize,
    y1: usize,
    depth: f32,
}

/// Quantizes to the 1/256 m grid of the depth PNG format.
fn quantize(v: f32) -> f32 {
    (v * 256.0).round() / 256.0
}

pub fn lidar_frame(width: usize, height: usize, seed: u64) -> Frame {
    let mut rng = SplitMix::new(seed);
    let horizon = height / 3;
    let obstacles: Vec<Obstacle> = (0..6)
        .map(|_| {
            let w = 8 + rng.below((width / 6).max(1));
            let h = 4 + rng.below((height / 4).max(1));
            let x0 = rng.below(width);
            let y1 = (horizon + 1 + rng.below((height - horizon).max(1))).min(height);
            Obstacle {
                x0,
                x1: (x0 + w).min(width),
                y0: y1.saturating_sub(h),
                y1,
                depth: 4.0 + 40.0 * rng.next_f32(),
            }
        })
        .collect();

    let scene = |x: usize, y: usize| -> f32 {
        let ground = if y > horizon {
            let rows = (height - horizon) as f32;
            (80.0 * 2.0 / (1.0 + 40.0 * (y - horizon) as f32 / rows)).clamp(2.0, 80.0)
        } else {
            80.0
        };
        obstacles
            .iter()
            .filter(|o| (o.x0..o.x1).contains(&x) && (o.y0..o.y1).contains(&y))
            .map(|o| o.depth)
            .fold(ground, f32::min)
    };

    let mut sparse = vec![0.0f32; width * height];
    let mut gt = vec![0.0f32; width * height];
    let mut y = horizon + rng.below(4);
    while y < height {
        let mut x = rng.below(4);
        while x < width {
            if rng.next_f32() < 0.95 {
                let noise = 1.0 + 0.01 * (rng.next_f32() - 0.5);
                sparse[y * width + x] = quantize((scene(x, y) * noise).min(85.0));
            }
            x += 3 + rng.below(3);
        }
        y += 3 + rng.below(3);
    }
    for y in horizon..height {
        for x in 0..width {
            if rng.next_f32() < 0.3 {
                gt[y * width + x] = quantize(scene(x, y));
            }
        }
    }
    Frame {
        sparse: DepthMap::from_vec(width, height, sparse).expect("generated depths are valid"),
        ground_truth: DepthMap::from_vec(width, height, gt).expect("generated depths are valid"),
    }
}

/// A KITTI-sized [`lidar_frame`].
pub fn kitti_frame(seed: u64) -> Frame {
    lidar_frame(KITTI_WIDTH, KITTI_HEIGHT, seed)
}
