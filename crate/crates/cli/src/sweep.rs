//! Ablation sweeps over dilation shape, dilation size and blur mode.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use depthfill::io::{enumerate_pairs, read_depth_png, FramePair};
use depthfill::{complete_with_stats, BlurMode, ErrorAccumulator, KernelShape, PipelineConfig};
use rayon::prelude::*;

use crate::config::ConfigArgs;
use crate::eval::pooled;
use crate::frames::{self, JobsArg};

pub const SWEEP_SIZES: [usize; 3] = [3, 5, 7];

pub const CSV_HEADER: [&str; 8] = [
    "dilation_shape",
    "dilation_size",
    "blur_mode",
    "rmse_mm",
    "mae_mm",
    "irmse_invkm",
    "imae_invkm",
    "mean_runtime_ms",
];

/// Run the pipeline once per configuration and score each run.
///
/// Axes left out keep the value from the base config. Rows come out
/// shape-major, then size, then blur, each in the order given.
#[derive(Debug, clap::Args)]
pub struct Args {
    /// Sparse input PNGs.
    pub input_dir: PathBuf,
    /// Ground truth, matched to inputs by file name.
    pub gt_dir: PathBuf,
    #[arg(long, value_delimiter = ',', value_name = "SHAPE,..")]
    pub shapes: Vec<KernelShape>,
    #[arg(long, value_delimiter = ',', value_name = "N,..")]
    pub sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_name = "MODE,..")]
    pub blurs: Vec<BlurMode>,
    /// CSV destination (default: stdout).
    #[arg(long, short, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(flatten)]
    pub jobs: JobsArg,
}

fn or_base<T: Copy>(axis: &[T], base: T) -> Vec<T> {
    if axis.is_empty() {
        vec![base]
    } else {
        axis.to_vec()
    }
}

/// Expands the axes into configs, in row order.
pub fn configs(
    base: &PipelineConfig,
    shapes: &[KernelShape],
    sizes: &[usize],
    blurs: &[BlurMode],
) -> Result<Vec<PipelineConfig>> {
    if let Some(bad) = sizes.iter().find(|s| !SWEEP_SIZES.contains(s)) {
        bail!("sweep size {bad} is not one of 3, 5, 7");
    }
    let shapes = or_base(shapes, base.dilation_shape);
    let sizes = or_base(sizes, base.dilation_size);
    let blurs = or_base(blurs, base.blur_mode);
    let mut out = Vec::new();
    for dilation_shape in shapes {
        for &dilation_size in &sizes {
            for &blur_mode in &blurs {
                let c = PipelineConfig {
                    dilation_shape,
                    dilation_size,
                    blur_mode,
                    ..base.clone()
                };
                c.validate()?;
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn run_pair(pair: &FramePair, config: &PipelineConfig) -> Result<(ErrorAccumulator, f64)> {
    let sparse = read_depth_png(&pair.pred)?;
    let gt = read_depth_png(&pair.gt)?;
    let (dense, stats) = complete_with_stats(&sparse, config)?;
    let mut acc = ErrorAccumulator::new();
    acc.add(&dense, &gt)?;
    Ok((acc, stats.total_ms))
}

/// One CSV row: the swept fields, pooled metrics and mean pipeline time.
pub fn run_config(pairs: &[FramePair], config: &PipelineConfig, pool: &rayon::ThreadPool) -> Result<[String; 8]> {
    let names: Vec<String> = pairs.iter().map(|p| p.name.clone()).collect();
    let results = pool.install(|| pairs.par_iter().map(|p| run_pair(p, config)).collect());
    let runs = frames::collect(&names, results, "frames")?;
    let accs: Vec<ErrorAccumulator> = runs.iter().map(|r| r.0).collect();
    let report = pooled(&accs)?;
    let mean_ms = runs.iter().map(|r| r.1).sum::<f64>() / runs.len() as f64;
    Ok([
        config.dilation_shape.to_string(),
        config.dilation_size.to_string(),
        config.blur_mode.to_string(),
        format!("{:.4}", report.rmse),
        format!("{:.4}", report.mae),
        format!("{:.4}", report.irmse),
        format!("{:.4}", report.imae),
        format!("{mean_ms:.3}"),
    ])
}

pub fn run(args: &Args) -> Result<()> {
    let base = args.config.resolve()?;
    let configs = configs(&base, &args.shapes, &args.sizes, &args.blurs)?;
    let pairing = enumerate_pairs(&args.input_dir, &args.gt_dir)?;
    frames::warn_unmatched("ground truth", &pairing.unmatched_pred);
    let pool = args.jobs.pool()?;

    let sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for (i, config) in configs.iter().enumerate() {
        let label = format!("{} {} {}", config.dilation_shape, config.dilation_size, config.blur_mode);
        let row = run_config(&pairing.pairs, config, &pool).with_context(|| label.clone())?;
        eprintln!("[{}/{}] {label}: rmse {} mm", i + 1, configs.len(), row[3]);
        w.write_record(&row)?;
        w.flush()?;
    }
    Ok(())
}
