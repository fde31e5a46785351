//! Naive reference implementations used as test oracles.
//!
//! Everything here works on plain row-major `f32` grids with nested loops
//! and clamped indexing, and shares no code with the library's fast paths.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

pub struct Grid {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f32>,
}

impl Grid {
    pub fn at(&self, x: isize, y: isize) -> f32 {
        let x = x.clamp(0, self.width as isize - 1) as usize;
        let y = y.clamp(0, self.height as isize - 1) as usize;
        self.data[y * self.width + x]
    }

    fn map(&self, mut f: impl FnMut(isize, isize) -> f32) -> Vec<f32> {
        let mut out = Vec::with_capacity(self.data.len());
        for y in 0..self.height as isize {
            for x in 0..self.width as isize {
                out.push(f(x, y));
            }
        }
        out
    }
}

/// Offsets of set bits in a row-major `size x size` footprint.
pub fn footprint(bits: &[bool], size: usize) -> Vec<(isize, isize)> {
    let r = (size / 2) as isize;
    let mut out = Vec::new();
    for row in 0..size {
        for col in 0..size {
            if bits[row * size + col] {
                out.push((col as isize - r, row as isize - r));
            }
        }
    }
    out
}

pub fn dilate(g: &Grid, fp: &[(isize, isize)]) -> Vec<f32> {
    g.map(|x, y| {
        let mut best = f32::NEG_INFINITY;
        for &(dx, dy) in fp {
            let v = g.at(x + dx, y + dy);
            if v > best {
                best = v;
            }
        }
        best
    })
}

pub fn erode(g: &Grid, fp: &[(isize, isize)]) -> Vec<f32> {
    g.map(|x, y| {
        let mut best = f32::INFINITY;
        for &(dx, dy) in fp {
            let v = g.at(x + dx, y + dy);
            if v < best {
                best = v;
            }
        }
        best
    })
}

pub fn close(g: &Grid, fp: &[(isize, isize)]) -> Vec<f32> {
    let d = Grid {
        width: g.width,
        height: g.height,
        data: dilate(g, fp),
    };
    erode(&d, fp)
}

pub fn masked_fill(g: &Grid, fp: &[(isize, isize)]) -> Vec<f32> {
    let d = dilate(g, fp);
    g.data
        .iter()
        .zip(d)
        .map(|(&v, d)| if v > 0.1 { v } else { d })
        .collect()
}

pub fn median(g: &Grid, size: usize) -> Vec<f32> {
    let r = (size / 2) as isize;
    g.map(|x, y| {
        let mut vals = Vec::with_capacity(size * size);
        for dy in -r..=r {
            for dx in -r..=r {
                vals.push(g.at(x + dx, y + dy));
            }
        }
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals[vals.len() / 2]
    })
}

pub fn extend_to_top(g: &Grid) -> Vec<f32> {
    let mut out = g.data.clone();
    for x in 0..g.width {
        let mut top = None;
        for y in 0..g.height {
            if g.data[y * g.width + x] > 0.1 {
                top = Some(y);
                break;
            }
        }
        if let Some(t) = top {
            for y in 0..t {
                out[y * g.width + x] = g.data[t * g.width + x];
            }
        }
    }
    out
}

/// Direct (non-separable) 2-D Gaussian convolution in f64.
pub fn gaussian(g: &Grid, size: usize, sigma: f64) -> Vec<f64> {
    let r = (size / 2) as isize;
    let w1: Vec<f64> = (-r..=r)
        .map(|i| (-((i * i) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = w1.iter().sum::<f64>().powi(2);
    let mut out = Vec::with_capacity(g.data.len());
    for y in 0..g.height as isize {
        for x in 0..g.width as isize {
            let mut acc = 0.0;
            for dy in -r..=r {
                for dx in -r..=r {
                    let w = w1[(dy + r) as usize] * w1[(dx + r) as usize];
                    acc += w * g.at(x + dx, y + dy) as f64;
                }
            }
            out.push(acc / total);
        }
    }
    out
}

/// Bilateral filter straight from its definition, in f64.
pub fn bilateral(g: &Grid, size: usize, sigma_value: f64, sigma_space: f64) -> Vec<f64> {
    let r = (size / 2) as isize;
    let mut out = Vec::with_capacity(g.data.len());
    for y in 0..g.height as isize {
        for x in 0..g.width as isize {
            let c = g.at(x, y) as f64;
            let (mut num, mut den) = (0.0, 0.0);
            for dy in -r..=r {
                for dx in -r..=r {
                    let v = g.at(x + dx, y + dy) as f64;
                    let ds = (dx * dx + dy * dy) as f64;
                    let w = (-ds / (2.0 * sigma_space * sigma_space)).exp()
                        * (-(v - c) * (v - c) / (2.0 * sigma_value * sigma_value)).exp();
                    num += w * v;
                    den += w;
                }
            }
            out.push(num / den);
        }
    }
    out
}

/// Random grid of inverted-encoding values: empty (0.0) with probability
/// `1 - density`, else a value in `[20, 99.9)` on the 1/256 grid.
pub fn random_inverted(rng: &mut StdRng, width: usize, height: usize, density: f64) -> Grid {
    let data = (0..width * height)
        .map(|_| {
            if rng.gen_bool(density) {
                (rng.gen_range(20.0f32..99.9) * 256.0).round() / 256.0
            } else {
                0.0
            }
        })
        .collect();
    Grid {
        width,
        height,
        data,
    }
}

/// Random direct-encoded depths in `[0.5, 80]` m on the 1/256 m grid.
pub fn random_direct(rng: &mut StdRng, width: usize, height: usize, density: f64) -> Vec<f32> {
    (0..width * height)
        .map(|_| {
            if rng.gen_bool(density) {
                (rng.gen_range(0.5f32..80.0) * 256.0).round() / 256.0
            } else {
                0.0
            }
        })
        .collect()
}
