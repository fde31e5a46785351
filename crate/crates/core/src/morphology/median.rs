//! Square-window median filter built from comparator networks.
//!
//! Every column of the window is sorted first, which is shared by the
//! `size` horizontally adjacent windows that contain it. A pruned network
//! then picks the median from the column-sorted window (see
//! [`SelectionNetwork::window_median`]). Common sizes run unrolled kernels
//! generated from the same networks at build time; other sizes interpret
//! the op list. Both are branch-free and run over blocks of pixels.

use crate::buffer;
use super::extremum::{Extremum, Max, Min};
use super::network::{sort_wires, Op, SelectionNetwork};

include!(concat!(env!("OUT_DIR"), "/median_kernels.rs"));

#[inline(always)]
fn sort<const L: usize>(v: &mut [[f32; L]], a: usize, b: usize) {
    let (x, y) = pair_mut(v, a, b);
    for (p, q) in x.iter_mut().zip(y.iter_mut()) {
        let (u, w) = (*p, *q);
        *p = Min::pick(u, w);
        *q = Max::pick(u, w);
    }
}

#[inline(always)]
fn min_into<const L: usize>(v: &mut [[f32; L]], a: usize, b: usize) {
    let (x, y) = pair_mut(v, a, b);
    for (p, &q) in x.iter_mut().zip(y.iter()) {
        *p = Min::pick(*p, q);
    }
}

#[inline(always)]
fn max_into<const L: usize>(v: &mut [[f32; L]], a: usize, b: usize) {
    let (x, y) = pair_mut(v, a, b);
    for (&p, q) in x.iter().zip(y.iter_mut()) {
        *q = Max::pick(p, *q);
    }
}

/// Runs `net` on `lanes`, one row of `L` lanes per input wire.
#[inline(always)]
fn run_network<const L: usize>(net: &SelectionNetwork, lanes: &mut [[f32; L]]) -> [f32; L] {
    debug_assert_eq!(lanes.len(), net.inputs);
    for &op in &net.ops {
        match op {
            Op::Sort(a, b) => sort(lanes, a as usize, b as usize),
            Op::MinInto(a, b) => min_into(lanes, a as usize, b as usize),
            Op::MaxInto(a, b) => max_into(lanes, a as usize, b as usize),
        }
    }
    lanes[net.output]
}

const LANES: usize = 8;

/// The first `LANES` values of `row`.
#[inline(always)]
fn lanes(row: &[f32]) -> [f32; LANES] {
    row[..LANES].try_into().unwrap()
}

/// Lanes `x0 .. x0 + LANES` of window wire `i` (rank `i / size` of window
/// column `i % size`), given rank-ordered sorted columns.
#[inline(always)]
fn load(cols: &[Vec<f32>], size: usize, x0: usize, i: usize) -> [f32; LANES] {
    lanes(&cols[i / size][x0 + i % size..])
}

/// Computes `LANES` adjacent medians from rank-ordered sorted columns.
trait WindowKernel {
    fn run(&mut self, cols: &[Vec<f32>], x0: usize) -> [f32; LANES];
}

/// Any window size, by walking the network's op list.
struct Interpreted {
    size: usize,
    net: SelectionNetwork,
    lanes: Vec<[f32; LANES]>,
}

impl WindowKernel for Interpreted {
    #[inline(always)]
    fn run(&mut self, cols: &[Vec<f32>], x0: usize) -> [f32; LANES] {
        for (i, lane) in self.lanes.iter_mut().enumerate() {
            *lane = load(cols, self.size, x0, i);
        }
        run_network(&self.net, &mut self.lanes)
    }
}

/// Median over `size x size` windows with replicated borders.
#[inline(always)]
pub(crate) fn median(src: &[f32], width: usize, size: usize) -> Vec<f32> {
    match size {
        3 => median_rows(src, width, 3, Unrolled3),
        5 => median_rows(src, width, 5, Unrolled5),
        7 => median_rows(src, width, 7, Unrolled7),
        _ => {
            let kernel = Interpreted {
                size,
                net: SelectionNetwork::window_median(size),
                lanes: vec![[0.0; LANES]; size * size],
            };
            median_rows(src, width, size, kernel)
        }
    }
}

/// Sorts the window columns for each output row, then runs `kernel` once
/// per block of `LANES` output pixels.
#[inline(always)]
fn median_rows<K: WindowKernel>(src: &[f32], width: usize, size: usize, mut kernel: K) -> Vec<f32> {
    let height = src.len() / width;
    let radius = size / 2;
    let (column_sort, column_rank) = sort_wires(&(0..size).collect::<Vec<_>>());

    // rows padded by `radius` replicated pixels, plus slack so every block
    // can read a full `LANES` run
    let pw = width + 2 * radius + LANES;
    let mut padded = buffer::take(pw * height);
    for (row, dst) in src.chunks_exact(width).zip(padded.chunks_exact_mut(pw)) {
        dst[..radius].fill(row[0]);
        dst[radius..radius + width].copy_from_slice(row);
        dst[radius + width..].fill(row[width - 1]);
    }

    let mut out = buffer::take(src.len());
    let mut columns = vec![vec![0.0f32; pw]; size];
    let mut ranked: Vec<Vec<f32>> = Vec::with_capacity(size);
    for y in 0..height {
        for (dy, col) in columns.iter_mut().enumerate() {
            let sy = (y + dy).saturating_sub(radius).min(height - 1);
            col.copy_from_slice(&padded[sy * pw..(sy + 1) * pw]);
        }
        for &(a, b) in &column_sort {
            let (lo, hi) = pair_mut(&mut columns, a, b);
            for (p, q) in lo.iter_mut().zip(hi.iter_mut()) {
                let (u, v) = (*p, *q);
                *p = Min::pick(u, v);
                *q = Max::pick(u, v);
            }
        }
        ranked.clear();
        ranked.extend(column_rank.iter().map(|&w| std::mem::take(&mut columns[w])));

        let dst_row = &mut out[y * width..(y + 1) * width];
        for x0 in (0..width).step_by(LANES) {
            let res = kernel.run(&ranked, x0);
            let n = LANES.min(width - x0);
            dst_row[x0..x0 + n].copy_from_slice(&res[..n]);
        }
        for (&w, col) in column_rank.iter().zip(ranked.drain(..)) {
            columns[w] = col;
        }
    }
    buffer::give(padded);
    out
}

#[inline(always)]
fn pair_mut<T>(s: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    debug_assert!(a != b);
    if a < b {
        let (l, r) = s.split_at_mut(b);
        (&mut l[a], &mut r[0])
    } else {
        let (l, r) = s.split_at_mut(a);
        (&mut r[0], &mut l[b])
    }
}
