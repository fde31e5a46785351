//! Input discovery, the worker pool, and per-frame failure reporting.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use depthfill::io::list_pngs;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Worker count for commands that process frames independently.
#[derive(Debug, Clone, Copy, Default, clap::Args)]
pub struct JobsArg {
    /// Frames processed in parallel (0 = one per CPU). Outputs do not
    /// depend on this.
    #[arg(long, short = 'j', default_value_t = 0, value_name = "N")]
    pub jobs: usize,
}

impl JobsArg {
    pub fn pool(self) -> Result<ThreadPool> {
        ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .context("starting worker threads")
    }
}

/// A single PNG, or every PNG in a directory in name order.
pub fn list_inputs(path: &Path) -> Result<Vec<PathBuf>> {
    if path.is_dir() {
        let files = list_pngs(path)?;
        if files.is_empty() {
            bail!("no PNG files in {}", path.display());
        }
        Ok(files)
    } else if path.is_file() {
        Ok(vec![path.to_path_buf()])
    } else {
        bail!("{}: no such file or directory", path.display())
    }
}

pub fn file_name(path: &Path) -> String {
    path.file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Splits per-frame results, printing each failure with its frame name.
/// Errors if anything failed, after every failure has been printed.
pub fn collect<T>(names: &[String], results: Vec<Result<T>>, what: &str) -> Result<Vec<T>> {
    let total = results.len();
    let mut ok = Vec::with_capacity(total);
    let mut failed = 0;
    for (name, result) in names.iter().zip(results) {
        match result {
            Ok(v) => ok.push(v),
            Err(e) => {
                failed += 1;
                eprintln!("error: {name}: {e:#}");
            }
        }
    }
    if failed > 0 {
        bail!("{failed} of {total} {what} failed");
    }
    Ok(ok)
}

pub fn warn_unmatched(label: &str, paths: &[PathBuf]) {
    for p in paths {
        eprintln!("warning: no {label} for {}", p.display());
    }
}

