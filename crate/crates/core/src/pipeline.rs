//! The eight-stage completion pipeline.
//!
//! Stages run on the inverted encoding so every max-based operation
//! favors nearer surfaces and never lets an empty pixel win:
//!
//! 1. invert
//! 2. dilate with the configurable dilation kernel
//! 3. close small holes (full kernel)
//! 4. fill remaining small holes (masked full-kernel dilation)
//! 5. extend each column's topmost value to the top row
//! 6. fill large holes (masked full-kernel dilation, repeated until dense)
//! 7. blur
//! 8. invert back
//!
//! Partial fill mode skips stages 5 and 6 and keeps the blurs from turning
//! empty pixels into measurements, which suits point-cloud densification
//! where extrapolated depth is unwanted.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::buffer;
use crate::depth::{is_valid_depth, DepthMap};
use crate::error::{Error, Result};
use crate::kernel::{check_window_size, Kernel, KernelShape};
use crate::morphology::{
    bilateral_filter, close, default_gaussian_sigma, dilate, extend_to_top, gaussian_filter,
    masked_fill_dilate, median_filter,
};

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                $name::ALL
                    .iter()
                    .copied()
                    .find(|v| v.name() == s)
                    .ok_or_else(|| {
                        let names: Vec<_> = $name::ALL.iter().map(|v| v.name()).collect();
                        format!("unknown value `{s}` (expected one of: {})", names.join(", "))
                    })
            }
        }
    };
}

named_enum! {
    /// Smoothing applied after the fills.
    BlurMode {
        None => "none",
        Bilateral => "bilateral",
        Median => "median",
        MedianBilateral => "median_bilateral",
        Gaussian => "gaussian",
        MedianGaussian => "median_gaussian",
    }
}

named_enum! {
    /// Whether the output is forced fully dense.
    FillMode {
        Full => "full",
        Partial => "partial",
    }
}

impl BlurMode {
    fn median(self) -> bool {
        matches!(
            self,
            BlurMode::Median | BlurMode::MedianBilateral | BlurMode::MedianGaussian
        )
    }

    fn gaussian(self) -> bool {
        matches!(self, BlurMode::Gaussian | BlurMode::MedianGaussian)
    }

    fn bilateral(self) -> bool {
        matches!(self, BlurMode::Bilateral | BlurMode::MedianBilateral)
    }
}

/// Every tunable of the pipeline. `Default` is the best configuration
/// found by the kernel and blur ablations: a 5x5 diamond followed by median
/// and Gaussian blurs.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub dilation_shape: KernelShape,
    pub dilation_size: usize,
    pub closure_size: usize,
    pub small_fill_size: usize,
    pub large_fill_size: usize,
    pub large_fill_max_iters: usize,
    pub blur_mode: BlurMode,
    pub median_size: usize,
    pub gaussian_size: usize,
    pub gaussian_sigma: f64,
    pub bilateral_size: usize,
    /// Range sigma, in inverted-depth units (meters).
    pub bilateral_sigma_value: f64,
    /// Spatial sigma, in pixels.
    pub bilateral_sigma_space: f64,
    pub fill_mode: FillMode,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            dilation_shape: KernelShape::Diamond,
            dilation_size: 5,
            closure_size: 5,
            small_fill_size: 7,
            large_fill_size: 31,
            large_fill_max_iters: 16,
            blur_mode: BlurMode::MedianGaussian,
            median_size: 5,
            gaussian_size: 5,
            gaussian_sigma: default_gaussian_sigma(5),
            bilateral_size: 5,
            bilateral_sigma_value: 1.5,
            bilateral_sigma_space: 2.0,
            fill_mode: FillMode::Full,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        for size in [
            self.dilation_size,
            self.closure_size,
            self.small_fill_size,
            self.large_fill_size,
            self.median_size,
            self.gaussian_size,
            self.bilateral_size,
        ] {
            check_window_size(size)?;
        }
        if self.large_fill_max_iters == 0 {
            return Err(Error::InvalidParameter {
                name: "large_fill_max_iters",
                value: 0.0,
            });
        }
        for (name, value) in [
            ("gaussian_sigma", self.gaussian_sigma),
            ("bilateral_sigma_value", self.bilateral_sigma_value),
            ("bilateral_sigma_space", self.bilateral_sigma_space),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

/// The eight pipeline stages, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Invert,
    Dilate,
    Close,
    SmallFill,
    ExtendTop,
    LargeFill,
    Blur,
    InvertBack,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Invert,
        Stage::Dilate,
        Stage::Close,
        Stage::SmallFill,
        Stage::ExtendTop,
        Stage::LargeFill,
        Stage::Blur,
        Stage::InvertBack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Invert => "invert",
            Stage::Dilate => "dilate",
            Stage::Close => "close",
            Stage::SmallFill => "small_fill",
            Stage::ExtendTop => "extend_top",
            Stage::LargeFill => "large_fill",
            Stage::Blur => "blur",
            Stage::InvertBack => "invert_back",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageTiming {
    pub stage: Stage,
    pub ms: f64,
}

/// Wall-clock timings for one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    /// One entry per stage, in order. Skipped stages report zero.
    pub stages: Vec<StageTiming>,
    pub total_ms: f64,
    pub input_density: f64,
    pub output_density: f64,
}

impl RunStats {
    pub fn stage_ms(&self, stage: Stage) -> f64 {
        self.stages
            .iter()
            .find(|t| t.stage == stage)
            .map_or(0.0, |t| t.ms)
    }
}

/// Completes `sparse` into a dense (or, in partial mode, denser) depth map.
pub fn complete(sparse: &DepthMap, config: &PipelineConfig) -> Result<DepthMap> {
    run(sparse, config, |_, _, _| {})
}

/// [`complete`] plus per-stage timings.
pub fn complete_with_stats(
    sparse: &DepthMap,
    config: &PipelineConfig,
) -> Result<(DepthMap, RunStats)> {
    let mut stages = Vec::with_capacity(Stage::ALL.len());
    let start = Instant::now();
    let out = run(sparse, config, |stage, _, ms| stages.push(StageTiming { stage, ms }))?;
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    let stats = RunStats {
        stages,
        total_ms,
        input_density: sparse.density(),
        output_density: out.density(),
    };
    Ok((out, stats))
}

/// [`complete`], also returning the map produced by every stage.
pub fn complete_with_trace(
    sparse: &DepthMap,
    config: &PipelineConfig,
) -> Result<(DepthMap, Vec<(Stage, DepthMap)>)> {
    let mut trace = Vec::with_capacity(Stage::ALL.len());
    let out = run(sparse, config, |stage, map, _| trace.push((stage, map.clone())))?;
    Ok((out, trace))
}

/// Keeps blurred values only where `before` held a measurement.
///
/// A valid pixel whose blurred value would land in the empty band (it was
/// averaged with too many empties) keeps its pre-blur value instead.
fn reimpose_mask(before: &DepthMap, blurred: DepthMap) -> DepthMap {
    let mut data = blurred.into_values();
    for (a, &b) in data.iter_mut().zip(before.values()) {
        *a = match (is_valid_depth(b), is_valid_depth(*a)) {
            (false, _) => 0.0,
            (true, true) => *a,
            (true, false) => b,
        };
    }
    before.derive(data)
}

/// Applies one stage and recycles its input.
fn step(map: DepthMap, stage: impl FnOnce(&DepthMap) -> DepthMap) -> DepthMap {
    let out = stage(&map);
    recycle(map);
    out
}

fn step_result(map: DepthMap, stage: impl FnOnce(&DepthMap) -> Result<DepthMap>) -> Result<DepthMap> {
    let out = stage(&map);
    recycle(map);
    out
}

/// Hands a finished intermediate's storage to the next stage.
fn recycle(map: DepthMap) {
    buffer::give(map.into_values());
}

fn run(
    sparse: &DepthMap,
    config: &PipelineConfig,
    mut observe: impl FnMut(Stage, &DepthMap, f64),
) -> Result<DepthMap> {
    config.validate()?;
    if sparse.valid_count() == 0 {
        return Err(Error::NoValidPixels);
    }
    let partial = config.fill_mode == FillMode::Partial;

    let mut clock = Instant::now();
    let mut record = |stage: Stage, map: &DepthMap| {
        let now = Instant::now();
        observe(stage, map, (now - clock).as_secs_f64() * 1e3);
        clock = now;
    };

    let map = sparse.invert()?;
    record(Stage::Invert, &map);

    let dilation = Kernel::new(config.dilation_shape, config.dilation_size)?;
    let map = step(map, |m| dilate(m, &dilation));
    record(Stage::Dilate, &map);

    let closure = Kernel::full(config.closure_size)?;
    let map = step(map, |m| close(m, &closure));
    record(Stage::Close, &map);

    let small = Kernel::full(config.small_fill_size)?;
    let map = step(map, |m| masked_fill_dilate(m, &small));
    record(Stage::SmallFill, &map);

    let map = if partial { map } else { step(map, extend_to_top) };
    record(Stage::ExtendTop, &map);

    let mut map = map;
    if !partial {
        let kernel = Kernel::full(config.large_fill_size)?;
        for _ in 0..config.large_fill_max_iters {
            if map.valid_count() == map.len() {
                break;
            }
            map = step(map, |m| masked_fill_dilate(m, &kernel));
        }
    }
    record(Stage::LargeFill, &map);

    let mode = config.blur_mode;
    let blur = |before: DepthMap, blurred: Result<DepthMap>| -> Result<DepthMap> {
        let blurred = blurred?;
        let out = if partial {
            reimpose_mask(&before, blurred)
        } else {
            blurred
        };
        recycle(before);
        Ok(out)
    };
    if mode.median() {
        let blurred = median_filter(&map, config.median_size);
        map = blur(map, blurred)?;
    }
    if mode.gaussian() {
        let blurred = gaussian_filter(&map, config.gaussian_size, config.gaussian_sigma);
        map = blur(map, blurred)?;
    }
    if mode.bilateral() {
        let blurred = bilateral_filter(
            &map,
            config.bilateral_size,
            config.bilateral_sigma_value,
            config.bilateral_sigma_space,
        );
        map = blur(map, blurred)?;
    }
    record(Stage::Blur, &map);

    let map = step_result(map, DepthMap::invert_back)?;
    record(Stage::InvertBack, &map);
    Ok(map)
}
