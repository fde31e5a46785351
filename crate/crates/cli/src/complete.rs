use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use depthfill::io::{read_depth_png, write_depth_png};
use depthfill::{complete_with_stats, PipelineConfig, RunStats};
use rayon::prelude::*;

use crate::config::ConfigArgs;
use crate::frames::{self, JobsArg};

/// Complete sparse depth PNGs into dense ones.
#[derive(Debug, clap::Args)]
pub struct Args {
    /// A sparse 16-bit depth PNG, or a directory of them.
    pub input: PathBuf,
    /// Where completed PNGs go, under their input file names.
    pub output_dir: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub jobs: JobsArg,
}

/// Reads, completes and writes one frame. The returned timings cover the
/// pipeline only, not the PNG codec.
pub fn complete_file(input: &Path, output: &Path, config: &PipelineConfig) -> Result<RunStats> {
    let sparse = read_depth_png(input)?;
    let (dense, stats) = complete_with_stats(&sparse, config)?;
    write_depth_png(&dense, output)?;
    Ok(stats)
}

pub fn run(args: &Args) -> Result<()> {
    let config = args.config.resolve()?;
    let inputs = frames::list_inputs(&args.input)?;
    fs::create_dir_all(&args.output_dir)
        .with_context(|| format!("creating {}", args.output_dir.display()))?;
    let out_dir = args.output_dir.canonicalize()?;
    let names: Vec<String> = inputs.iter().map(|p| frames::file_name(p)).collect();
    for input in &inputs {
        if input.parent().and_then(|d| d.canonicalize().ok()).as_deref() == Some(&out_dir) {
            bail!("output directory {} holds the inputs", args.output_dir.display());
        }
    }

    let results: Vec<Result<RunStats>> = args.jobs.pool()?.install(|| {
        inputs
            .par_iter()
            .zip(&names)
            .map(|(input, name)| complete_file(input, &out_dir.join(name), &config))
            .collect()
    });
    for (name, result) in names.iter().zip(&results) {
        if let Ok(s) = result {
            println!(
                "{name}: {:.2} ms, density {:.4} -> {:.4}",
                s.total_ms, s.input_density, s.output_density
            );
        }
    }
    let stats = frames::collect(&names, results, "frames")?;
    let mean = stats.iter().map(|s| s.total_ms).sum::<f64>() / stats.len() as f64;
    println!(
        "{} frames, mean {mean:.2} ms/frame ({:.1} frames/s), excluding PNG I/O",
        stats.len(),
        1e3 / mean
    );
    Ok(())
}
