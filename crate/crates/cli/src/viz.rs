use std::path::PathBuf;

use anyhow::{bail, Result};
use depthfill::io::{colormap, error_colormap, read_depth_png, write_rgb_png};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Depth over 0 to `--max` meters; empty pixels are black.
    Depth,
    /// |pred - gt| over 0 to `--max` meters where both are valid; other
    /// pixels are black.
    Error,
}

/// Render a depth PNG, or its error against ground truth, as a color PNG.
#[derive(Debug, clap::Args)]
pub struct Args {
    /// Depth PNG (the prediction in error mode).
    pub input: PathBuf,
    /// Color PNG to write.
    pub output: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Depth)]
    pub mode: Mode,
    /// Ground truth depth PNG, required in error mode.
    #[arg(long, value_name = "FILE")]
    pub gt: Option<PathBuf>,
    /// Top of the color scale in meters (default: 80 for depth, 5 for error).
    #[arg(long, value_name = "METERS")]
    pub max: Option<f32>,
}

pub const DEPTH_MAX: f32 = 80.0;
pub const ERROR_MAX: f32 = 5.0;

pub fn run(args: &Args) -> Result<()> {
    let map = read_depth_png(&args.input)?;
    let rgb = match (args.mode, &args.gt) {
        (Mode::Depth, None) => colormap(map.values(), 0.0, args.max.unwrap_or(DEPTH_MAX))?,
        (Mode::Depth, Some(_)) => bail!("--gt only applies to error mode"),
        (Mode::Error, None) => bail!("error mode needs --gt"),
        (Mode::Error, Some(gt)) => {
            let gt = read_depth_png(gt)?;
            error_colormap(&map, &gt, args.max.unwrap_or(ERROR_MAX))?
        }
    };
    write_rgb_png(&rgb, map.width(), map.height(), &args.output)?;
    Ok(())
}
