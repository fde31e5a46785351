//! Gaussian and bilateral smoothing.

use crate::buffer;

/// OpenCV's rule for deriving sigma from an odd window size.
pub fn default_gaussian_sigma(size: usize) -> f64 {
    0.3 * ((size as f64 - 1.0) * 0.5 - 1.0) + 0.8
}

/// Normalized 1-D Gaussian taps for `-size/2 ..= size/2`.
pub fn gaussian_weights(size: usize, sigma: f64) -> Vec<f32> {
    let r = (size / 2) as i64;
    let raw: Vec<f64> = (-r..=r)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| (w / total) as f32).collect()
}

fn value_range(src: &[f32]) -> (f32, f32) {
    src.iter()
        .fold((f32::INFINITY, f32::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

/// Separable Gaussian blur: horizontal taps, then vertical, replicated borders.
///
/// Results are clamped to the input value range so rounding in the weighted
/// sums cannot step outside it.
#[inline(always)]
pub(crate) fn gaussian(src: &[f32], width: usize, size: usize, sigma: f64) -> Vec<f32> {
    let height = src.len() / width;
    let r = size / 2;
    let w = gaussian_weights(size, sigma);

    let mut horiz = buffer::take(src.len());
    let mut padded = Vec::with_capacity(width + 2 * r);
    for (row, dst) in src.chunks_exact(width).zip(horiz.chunks_exact_mut(width)) {
        padded.clear();
        padded.extend(std::iter::repeat_n(row[0], r));
        padded.extend_from_slice(row);
        padded.extend(std::iter::repeat_n(row[width - 1], r));
        // mirrored taps are paired so mirrored inputs give identical sums
        for (o, &v) in dst.iter_mut().zip(&padded[r..]) {
            *o = w[r] * v;
        }
        for k in 1..=r {
            let left = &padded[r - k..];
            let right = &padded[r + k..];
            for ((o, &a), &b) in dst.iter_mut().zip(left).zip(right) {
                *o += w[r - k] * (a + b);
            }
        }
    }

    let (lo, hi) = value_range(src);
    let mut out = buffer::take(src.len());
    for (y, dst) in out.chunks_exact_mut(width).enumerate() {
        let line = |sy: usize| &horiz[sy * width..(sy + 1) * width];
        for (o, &v) in dst.iter_mut().zip(line(y)) {
            *o = w[r] * v;
        }
        for k in 1..=r {
            let above = line(y.saturating_sub(k));
            let below = line((y + k).min(height - 1));
            for ((o, &a), &b) in dst.iter_mut().zip(above).zip(below) {
                *o += w[r - k] * (a + b);
            }
        }
        for o in dst.iter_mut() {
            *o = o.clamp(lo, hi);
        }
    }
    buffer::give(horiz);
    out
}

/// Edge-preserving bilateral filter over `size x size` windows.
pub(crate) fn bilateral(
    src: &[f32],
    width: usize,
    size: usize,
    sigma_value: f64,
    sigma_space: f64,
) -> Vec<f32> {
    let height = src.len() / width;
    let r = (size / 2) as isize;
    let mut spatial = Vec::with_capacity(size * size);
    let mut offsets = Vec::with_capacity(size * size);
    for dy in -r..=r {
        for dx in -r..=r {
            let d2 = (dx * dx + dy * dy) as f64;
            spatial.push((-d2 / (2.0 * sigma_space * sigma_space)).exp() as f32);
            offsets.push((dx, dy));
        }
    }
    let range_coeff = (-1.0 / (2.0 * sigma_value * sigma_value)) as f32;
    let (lo, hi) = value_range(src);
    let (w, h) = (width as isize, height as isize);

    let mut out = buffer::take(src.len());
    for y in 0..h {
        for x in 0..w {
            let center = src[(y * w + x) as usize];
            let mut num = 0.0f32;
            let mut den = 0.0f32;
            for (&(dx, dy), &ws) in offsets.iter().zip(&spatial) {
                let sx = (x + dx).clamp(0, w - 1);
                let sy = (y + dy).clamp(0, h - 1);
                let v = src[(sy * w + sx) as usize];
                let d = v - center;
                let wgt = ws * (range_coeff * d * d).exp();
                num += wgt * v;
                den += wgt;
            }
            // the center tap always has weight 1, so den >= 1
            out[(y * w + x) as usize] = (num / den).clamp(lo, hi);
        }
    }
    out
}
