//! Depth-completion error metrics.
//!
//! RMSE and MAE are reported in millimeters; iRMSE and iMAE are computed on
//! inverse depth and reported in 1/km. Only pixels with ground truth are
//! scored. Ground-truth pixels the prediction leaves empty are counted in
//! [`MetricsReport::skipped_pixels`] rather than scored.
//!
//! Dataset-level numbers are aggregated per pixel: feed every frame into one
//! [`ErrorAccumulator`] and finalize once. Averaging per-frame reports gives
//! different numbers whenever frames have different ground-truth counts.

use std::fmt;

use crate::depth::{is_valid_depth, DepthMap, Encoding};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsReport {
    pub rmse: f64,
    pub mae: f64,
    pub irmse: f64,
    pub imae: f64,
    pub evaluated_pixels: u64,
    pub skipped_pixels: u64,
}

impl MetricsReport {
    /// Field names in the order used by [`MetricsReport::render`].
    pub const KEYS: [&'static str; 6] = [
        "rmse_mm",
        "mae_mm",
        "irmse_invkm",
        "imae_invkm",
        "evaluated_pixels",
        "skipped_pixels",
    ];

    /// Flat `key = value` text, one metric per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in Self::KEYS.iter().zip(self.values()) {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }

    pub fn values(&self) -> [String; 6] {
        [
            format!("{:.6}", self.rmse),
            format!("{:.6}", self.mae),
            format!("{:.6}", self.irmse),
            format!("{:.6}", self.imae),
            self.evaluated_pixels.to_string(),
            self.skipped_pixels.to_string(),
        ]
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RMSE {:.2} mm, MAE {:.2} mm, iRMSE {:.2} 1/km, iMAE {:.2} 1/km ({} px, {} skipped)",
            self.rmse, self.mae, self.irmse, self.imae, self.evaluated_pixels, self.skipped_pixels
        )
    }
}

/// Running per-pixel error sums across any number of frames.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErrorAccumulator {
    sum_sq: f64,
    sum_abs: f64,
    sum_inv_sq: f64,
    sum_inv_abs: f64,
    evaluated: u64,
    skipped: u64,
}

impl ErrorAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, pred: &DepthMap, gt: &DepthMap) -> Result<()> {
        check_pair(pred, gt)?;
        for (&p, &g) in pred.values().iter().zip(gt.values()) {
            if !is_valid_depth(g) {
                continue;
            }
            if !is_valid_depth(p) {
                self.skipped += 1;
                continue;
            }
            let (p, g) = (p as f64, g as f64);
            let d = p - g;
            let di = 1.0 / p - 1.0 / g;
            self.sum_sq += d * d;
            self.sum_abs += d.abs();
            self.sum_inv_sq += di * di;
            self.sum_inv_abs += di.abs();
            self.evaluated += 1;
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &ErrorAccumulator) {
        self.sum_sq += other.sum_sq;
        self.sum_abs += other.sum_abs;
        self.sum_inv_sq += other.sum_inv_sq;
        self.sum_inv_abs += other.sum_inv_abs;
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
    }

    pub fn finish(&self) -> Result<MetricsReport> {
        if self.evaluated == 0 {
            return Err(Error::NoOverlap);
        }
        let n = self.evaluated as f64;
        Ok(MetricsReport {
            rmse: (self.sum_sq / n).sqrt() * 1000.0,
            mae: self.sum_abs / n * 1000.0,
            irmse: (self.sum_inv_sq / n).sqrt() * 1000.0,
            imae: self.sum_inv_abs / n * 1000.0,
            evaluated_pixels: self.evaluated,
            skipped_pixels: self.skipped,
        })
    }
}

fn check_pair(pred: &DepthMap, gt: &DepthMap) -> Result<()> {
    pred.expect_same_shape(gt)?;
    pred.expect_encoding(Encoding::Direct)?;
    gt.expect_encoding(Encoding::Direct)
}

/// Scores one prediction against its ground truth.
pub fn evaluate(pred: &DepthMap, gt: &DepthMap) -> Result<MetricsReport> {
    let mut acc = ErrorAccumulator::new();
    acc.add(pred, gt)?;
    acc.finish()
}

/// Mean of per-frame metrics. Only meant for comparing against per-pixel
/// aggregation; benchmark numbers are per pixel.
pub fn average_reports(reports: &[MetricsReport]) -> Option<MetricsReport> {
    if reports.is_empty() {
        return None;
    }
    let n = reports.len() as f64;
    let mean = |f: fn(&MetricsReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
    Some(MetricsReport {
        rmse: mean(|r| r.rmse),
        mae: mean(|r| r.mae),
        irmse: mean(|r| r.irmse),
        imae: mean(|r| r.imae),
        evaluated_pixels: reports.iter().map(|r| r.evaluated_pixels).sum(),
        skipped_pixels: reports.iter().map(|r| r.skipped_pixels).sum(),
    })
}

/// Absolute error in meters where both maps are valid, else zero.
pub fn error_map(pred: &DepthMap, gt: &DepthMap) -> Result<Vec<f32>> {
    pred.expect_same_shape(gt)?;
    Ok(pred
        .values()
        .iter()
        .zip(gt.values())
        .map(|(&p, &g)| {
            if is_valid_depth(p) && is_valid_depth(g) {
                (p - g).abs()
            } else {
                0.0
            }
        })
        .collect())
}
