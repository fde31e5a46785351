//! Running max/min filters.
//!
//! Short windows combine shifted slices directly, which vectorizes well.
//! Longer rectangular windows use the van Herk / Gil-Werman block
//! decomposition, which costs three comparisons per sample regardless of
//! the window length. Row-convex footprints (diamond, cross, circle) are handled as a
//! max over rows of horizontal running extrema, one per distinct row width.

use crate::buffer;
use crate::kernel::Kernel;

pub(crate) trait Extremum {
    fn pick(a: f32, b: f32) -> f32;
}

pub(crate) struct Max;
pub(crate) struct Min;

impl Extremum for Max {
    #[inline(always)]
    fn pick(a: f32, b: f32) -> f32 {
        if a > b {
            a
        } else {
            b
        }
    }
}

impl Extremum for Min {
    #[inline(always)]
    fn pick(a: f32, b: f32) -> f32 {
        if a < b {
            a
        } else {
            b
        }
    }
}

/// Windows up to this radius use direct slice combination.
const DIRECT_RADIUS: usize = 4;

/// Scratch space for the 1-D block passes.
#[derive(Default)]
struct Scratch {
    padded: Vec<f32>,
    prefix: Vec<f32>,
    suffix: Vec<f32>,
}

/// `dst[i] = ext(src[i - radius ..= i + radius])` with replicated ends.
#[inline(always)]
fn running_1d<E: Extremum>(src: &[f32], radius: usize, dst: &mut [f32], s: &mut Scratch) {
    let n = src.len();
    debug_assert_eq!(dst.len(), n);
    if radius == 0 {
        dst.copy_from_slice(src);
        return;
    }
    let window = 2 * radius + 1;
    let m = n + 2 * radius;
    s.padded.clear();
    s.padded.resize(radius, src[0]);
    s.padded.extend_from_slice(src);
    s.padded.resize(m, src[n - 1]);
    if radius <= DIRECT_RADIUS {
        dst.copy_from_slice(&s.padded[..n]);
        for k in 1..window {
            combine_into::<E>(dst, &s.padded[k..k + n]);
        }
        return;
    }
    s.prefix.resize(m, 0.0);
    s.suffix.resize(m, 0.0);

    let p = &s.padded;
    for start in (0..m).step_by(window) {
        let end = (start + window).min(m);
        let block = &p[start..end];
        let mut acc = block[0];
        for (out, &v) in s.prefix[start..end].iter_mut().zip(block) {
            acc = E::pick(acc, v);
            *out = acc;
        }
        let mut acc = block[block.len() - 1];
        for (out, &v) in s.suffix[start..end].iter_mut().zip(block).rev() {
            acc = E::pick(acc, v);
            *out = acc;
        }
    }
    for (i, out) in dst.iter_mut().enumerate() {
        *out = E::pick(s.suffix[i], s.prefix[i + window - 1]);
    }
}

/// Running extremum along every row.
#[inline(always)]
fn horizontal<E: Extremum>(src: &[f32], width: usize, radius: usize, s: &mut Scratch) -> Vec<f32> {
    let mut out = buffer::take(src.len());
    for (row, dst) in src.chunks_exact(width).zip(out.chunks_exact_mut(width)) {
        running_1d::<E>(row, radius, dst, s);
    }
    out
}

#[inline(always)]
fn combine_into<E: Extremum>(acc: &mut [f32], row: &[f32]) {
    for (a, &b) in acc.iter_mut().zip(row) {
        *a = E::pick(*a, b);
    }
}

/// Running extremum down every column, processing whole rows at a time.
#[inline(always)]
fn vertical<E: Extremum>(src: &[f32], width: usize, radius: usize) -> Vec<f32> {
    let height = src.len() / width;
    if radius == 0 {
        let mut out = buffer::take(src.len());
        out.copy_from_slice(src);
        return out;
    }
    let window = 2 * radius + 1;
    let m = height + 2 * radius;
    let padded_row = |i: usize| {
        let y = i.saturating_sub(radius).min(height - 1);
        &src[y * width..(y + 1) * width]
    };
    if radius <= DIRECT_RADIUS {
        let mut out = buffer::take(src.len());
        for (y, dst) in out.chunks_exact_mut(width).enumerate() {
            dst.copy_from_slice(padded_row(y));
            for k in 1..window {
                combine_into::<E>(dst, padded_row(y + k));
            }
        }
        return out;
    }
    // every row of both is written before it is read
    let mut prefix = buffer::take(m * width);
    let mut suffix = buffer::take(m * width);
    for start in (0..m).step_by(window) {
        let end = (start + window).min(m);
        prefix[start * width..(start + 1) * width].copy_from_slice(padded_row(start));
        for i in start + 1..end {
            let (done, rest) = prefix.split_at_mut(i * width);
            let cur = &mut rest[..width];
            cur.copy_from_slice(&done[(i - 1) * width..]);
            combine_into::<E>(cur, padded_row(i));
        }
        suffix[(end - 1) * width..end * width].copy_from_slice(padded_row(end - 1));
        for i in (start..end - 1).rev() {
            let (head, done) = suffix.split_at_mut((i + 1) * width);
            let cur = &mut head[i * width..];
            cur.copy_from_slice(&done[..width]);
            combine_into::<E>(cur, padded_row(i));
        }
    }
    let mut out = buffer::take(src.len());
    for (y, dst) in out.chunks_exact_mut(width).enumerate() {
        let h = &suffix[y * width..(y + 1) * width];
        let g = &prefix[(y + window - 1) * width..(y + window) * width];
        for ((o, &a), &b) in dst.iter_mut().zip(h).zip(g) {
            *o = E::pick(a, b);
        }
    }
    buffer::give(prefix);
    buffer::give(suffix);
    out
}

/// Flat morphological filter of `src` (row-major, `width` columns) with
/// `kernel`, replicating edge pixels outward.
#[inline(always)]
pub(crate) fn filter<E: Extremum>(src: &[f32], width: usize, kernel: &Kernel) -> Vec<f32> {
    let mut scratch = Scratch::default();
    let radius = kernel.radius();
    if kernel.is_full() {
        let rows = horizontal::<E>(src, width, radius, &mut scratch);
        let out = vertical::<E>(&rows, width, radius);
        buffer::give(rows);
        return out;
    }

    let height = src.len() / width;
    let size = kernel.size();
    // one horizontal pass per distinct nonzero row half-width
    let mut passes: Vec<(usize, Vec<f32>)> = Vec::new();
    for row in 0..size {
        let hw = kernel.half_width(row);
        if hw > 0 && !passes.iter().any(|(w, _)| *w == hw) {
            passes.push((hw, horizontal::<E>(src, width, hw, &mut scratch)));
        }
    }
    let pass_for = |row: usize| -> &[f32] {
        match kernel.half_width(row) {
            0 => src,
            hw => &passes.iter().find(|(w, _)| *w == hw).unwrap().1,
        }
    };

    let mut out = buffer::take(src.len());
    for (y, dst) in out.chunks_exact_mut(width).enumerate() {
        for row in 0..size {
            let sy = (y + row).saturating_sub(radius).min(height - 1);
            let line = &pass_for(row)[sy * width..(sy + 1) * width];
            if row == 0 {
                dst.copy_from_slice(line);
            } else {
                combine_into::<E>(dst, line);
            }
        }
    }
    for (_, pass) in passes {
        buffer::give(pass);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_1d(src: &[f32], radius: usize, max: bool) -> Vec<f32> {
        let n = src.len() as isize;
        (0..n)
            .map(|i| {
                let vals = (i - radius as isize..=i + radius as isize)
                    .map(|j| src[j.clamp(0, n - 1) as usize]);
                if max {
                    vals.fold(f32::MIN, f32::max)
                } else {
                    vals.fold(f32::MAX, f32::min)
                }
            })
            .collect()
    }

    #[test]
    fn running_1d_matches_naive() {
        let src: Vec<f32> = (0..37).map(|i| ((i * 7919) % 23) as f32).collect();
        let mut s = Scratch::default();
        for len in [1, 2, 5, 36, 37] {
            for radius in [0, 1, 2, 3, 15, 40] {
                let mut out = vec![0.0; len];
                running_1d::<Max>(&src[..len], radius, &mut out, &mut s);
                assert_eq!(out, naive_1d(&src[..len], radius, true), "max len={len} r={radius}");
                running_1d::<Min>(&src[..len], radius, &mut out, &mut s);
                assert_eq!(out, naive_1d(&src[..len], radius, false), "min len={len} r={radius}");
            }
        }
    }

    #[test]
    fn vertical_matches_transposed_horizontal() {
        let (w, h) = (3, 11);
        let src: Vec<f32> = (0..w * h).map(|i| ((i * 31) % 17) as f32).collect();
        for radius in [1, 2, 6] {
            let out = vertical::<Max>(&src, w, radius);
            for x in 0..w {
                let col: Vec<f32> = (0..h).map(|y| src[y * w + x]).collect();
                let expect = naive_1d(&col, radius, true);
                let got: Vec<f32> = (0..h).map(|y| out[y * w + x]).collect();
                assert_eq!(got, expect);
            }
        }
    }
}
