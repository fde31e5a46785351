//! Pipeline timing on real or synthetic frames.
//!
//! Pipeline time and PNG I/O are reported separately. Frames run one at a
//! time on the calling thread.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use depthfill::io::{encode_raw_png, read_depth_png, RawDepth};
use depthfill::synthetic;
use depthfill::{complete_with_stats, BlurMode, DepthMap, PipelineConfig, RunStats, Stage};

use crate::config::ConfigArgs;
use crate::frames;

/// Time the pipeline per stage.
#[derive(Debug, clap::Args)]
pub struct Args {
    /// A sparse depth PNG or a directory of them (default: a synthetic
    /// KITTI-size frame).
    pub input: Option<PathBuf>,
    /// Timed passes over every frame.
    #[arg(long, short = 'n', default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub repetitions: u32,
    /// Untimed passes before measuring.
    #[arg(long, default_value_t = 1)]
    pub warmup: u32,
    /// Also time every blur mode with the rest of the config fixed.
    #[arg(long)]
    pub compare_blurs: bool,
    #[command(flatten)]
    pub config: ConfigArgs,
}

/// Mean and nearest-rank percentiles of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub p50: f64,
    pub p95: f64,
}

impl Summary {
    /// Panics on an empty sample.
    pub fn of(samples: &[f64]) -> Summary {
        assert!(!samples.is_empty(), "empty sample");
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let rank = |p: f64| sorted[((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len()) - 1];
        Summary {
            mean: samples.iter().sum::<f64>() / samples.len() as f64,
            p50: rank(0.50),
            p95: rank(0.95),
        }
    }
}

/// Every timed run, one entry per frame per repetition.
pub fn time_runs(
    frames: &[DepthMap],
    config: &PipelineConfig,
    warmup: u32,
    repetitions: u32,
) -> Result<Vec<RunStats>> {
    for _ in 0..warmup {
        for f in frames {
            complete_with_stats(f, config)?;
        }
    }
    let mut runs = Vec::with_capacity(frames.len() * repetitions as usize);
    for _ in 0..repetitions {
        for f in frames {
            runs.push(complete_with_stats(f, config)?.1);
        }
    }
    Ok(runs)
}

/// Per-stage summaries, in stage order, then the total.
pub fn stage_table(runs: &[RunStats]) -> Vec<(&'static str, Summary)> {
    let mut rows: Vec<_> = Stage::ALL
        .iter()
        .map(|&s| {
            let ms: Vec<f64> = runs.iter().map(|r| r.stage_ms(s)).collect();
            (s.name(), Summary::of(&ms))
        })
        .collect();
    let total: Vec<f64> = runs.iter().map(|r| r.total_ms).collect();
    rows.push(("total", Summary::of(&total)));
    rows
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run(args: &Args) -> Result<()> {
    let config = args.config.resolve()?;
    let (frames, decode_ms) = match &args.input {
        Some(path) => {
            let paths = frames::list_inputs(path)?;
            let start = Instant::now();
            let maps = paths.iter().map(read_depth_png).collect::<Result<Vec<_>, _>>()?;
            let ms = ms_since(start) / maps.len() as f64;
            (maps, Some(ms))
        }
        None => (vec![synthetic::kitti_frame(0).sparse], None),
    };
    let (w, h) = (frames[0].width(), frames[0].height());
    println!(
        "{} frame(s), first {w}x{h}, {} warm-up and {} timed pass(es), config {} {} {}",
        frames.len(),
        args.warmup,
        args.repetitions,
        config.dilation_shape,
        config.dilation_size,
        config.blur_mode,
    );

    let runs = time_runs(&frames, &config, args.warmup, args.repetitions)?;
    println!("{:<12} {:>9} {:>9} {:>9}", "stage", "mean_ms", "p50_ms", "p95_ms");
    let table = stage_table(&runs);
    for (name, s) in &table {
        println!("{name:<12} {:>9.3} {:>9.3} {:>9.3}", s.mean, s.p50, s.p95);
    }
    let total = table.last().expect("total row").1;
    println!("throughput {:.1} frames/s", 1e3 / total.mean);

    let dense = depthfill::complete(&frames[0], &config)?;
    let start = Instant::now();
    encode_raw_png(&RawDepth::from_depth_map(&dense)?)?;
    let encode_ms = ms_since(start);
    match decode_ms {
        Some(d) => println!("png io (not in pipeline time): decode {d:.3} ms/frame, encode {encode_ms:.3} ms/frame"),
        None => println!("png io (not in pipeline time): encode {encode_ms:.3} ms/frame"),
    }

    if args.compare_blurs {
        println!("{:<18} {:>9} {:>9} {:>12}", "blur_mode", "mean_ms", "p50_ms", "vs_none_ms");
        let mut none_ms = None;
        for &blur_mode in BlurMode::ALL {
            let c = PipelineConfig {
                blur_mode,
                ..config.clone()
            };
            let runs = time_runs(&frames, &c, args.warmup, args.repetitions)?;
            let total: Vec<f64> = runs.iter().map(|r| r.total_ms).collect();
            let s = Summary::of(&total);
            let base = *none_ms.get_or_insert(s.mean);
            println!("{:<18} {:>9.3} {:>9.3} {:>+12.3}", blur_mode.name(), s.mean, s.p50, s.mean - base);
        }
    }
    Ok(())
}
