use std::path::PathBuf;

use anyhow::{Context, Result};
use depthfill::io::{enumerate_pairs, read_depth_png, FramePair};
use depthfill::metrics::average_reports;
use depthfill::{ErrorAccumulator, MetricsReport};
use rayon::prelude::*;

use crate::frames::{self, JobsArg};

/// Score predicted depth PNGs against ground truth with the same names.
#[derive(Debug, clap::Args)]
pub struct Args {
    pub pred_dir: PathBuf,
    pub gt_dir: PathBuf,
    /// Also write one CSV row of metrics per frame.
    #[arg(long, value_name = "FILE")]
    pub per_frame_csv: Option<PathBuf>,
    /// Also print the mean of per-frame metrics. The main report pools
    /// every pixel instead.
    #[arg(long)]
    pub per_frame_mean: bool,
    #[command(flatten)]
    pub jobs: JobsArg,
}

pub fn score_pair(pair: &FramePair) -> Result<ErrorAccumulator> {
    let pred = read_depth_png(&pair.pred)?;
    let gt = read_depth_png(&pair.gt)?;
    let mut acc = ErrorAccumulator::new();
    acc.add(&pred, &gt)
        .with_context(|| format!("{} vs {}", pair.pred.display(), pair.gt.display()))?;
    Ok(acc)
}

/// Per-frame accumulators for every pair, in pair order.
pub fn score_pairs(pairs: &[FramePair], jobs: JobsArg) -> Result<Vec<ErrorAccumulator>> {
    let names: Vec<String> = pairs.iter().map(|p| p.name.clone()).collect();
    let results = jobs.pool()?.install(|| pairs.par_iter().map(score_pair).collect());
    frames::collect(&names, results, "frames")
}

/// Pools per-frame sums in a fixed order, so results do not depend on
/// scheduling.
pub fn pooled(accs: &[ErrorAccumulator]) -> Result<MetricsReport> {
    let mut total = ErrorAccumulator::new();
    for a in accs {
        total.merge(a);
    }
    Ok(total.finish()?)
}

pub fn run(args: &Args) -> Result<()> {
    let pairing = enumerate_pairs(&args.pred_dir, &args.gt_dir)?;
    frames::warn_unmatched("ground truth", &pairing.unmatched_pred);
    frames::warn_unmatched("prediction", &pairing.unmatched_gt);
    let accs = score_pairs(&pairing.pairs, args.jobs)?;

    if let Some(path) = &args.per_frame_csv {
        let mut w = csv::Writer::from_path(path)
            .with_context(|| format!("creating {}", path.display()))?;
        let mut header = vec!["frame"];
        header.extend(MetricsReport::KEYS);
        w.write_record(&header)?;
        for (pair, acc) in pairing.pairs.iter().zip(&accs) {
            // frames without ground truth get empty metric fields
            let values = acc.finish().map_or_else(|_| Default::default(), |r| r.values());
            w.write_record(std::iter::once(pair.name.as_str()).chain(values.iter().map(String::as_str)))?;
        }
        w.flush()?;
    }

    let report = pooled(&accs)?;
    println!("frames = {}", accs.len());
    print!("{}", report.render());
    if args.per_frame_mean {
        let reports: Vec<MetricsReport> = accs.iter().filter_map(|a| a.finish().ok()).collect();
        if let Some(mean) = average_reports(&reports) {
            println!("per-frame mean over {} frames: {mean}", reports.len());
        }
    }
    Ok(())
}
