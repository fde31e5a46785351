//! Flat binary structuring elements.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelShape {
    Full,
    Circle,
    Cross,
    Diamond,
}

impl KernelShape {
    pub const ALL: [KernelShape; 4] = [
        KernelShape::Full,
        KernelShape::Circle,
        KernelShape::Cross,
        KernelShape::Diamond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelShape::Full => "full",
            KernelShape::Circle => "circle",
            KernelShape::Cross => "cross",
            KernelShape::Diamond => "diamond",
        }
    }

    fn contains(self, dx: i64, dy: i64, radius: i64) -> bool {
        match self {
            KernelShape::Full => true,
            KernelShape::Diamond => dx.abs() + dy.abs() <= radius,
            KernelShape::Cross => dx == 0 || dy == 0,
            // Boundary pixels whose center is within half a pixel of the
            // radius are kept, so the 5x5 circle is the full square minus
            // its four corners.
            KernelShape::Circle => dx * dx + dy * dy <= radius * (radius + 1),
        }
    }
}

impl fmt::Display for KernelShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelShape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        KernelShape::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown kernel shape `{s}` (expected full, circle, cross or diamond)"))
    }
}

/// A `size x size` boolean footprint anchored at its center pixel.
///
/// Every shape built here is symmetric and row-convex: row `dy` of the
/// footprint is exactly the run `-half_width(dy)..=half_width(dy)`. The
/// morphology routines rely on that to decompose 2-D neighborhoods into
/// 1-D running extrema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    shape: KernelShape,
    size: usize,
    bits: Vec<bool>,
    half_widths: Vec<usize>,
}

/// Checks that `size` is usable as a square window size.
pub fn check_window_size(size: usize) -> Result<()> {
    if size >= 3 && size % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidKernelSize(size))
    }
}

impl Kernel {
    pub fn new(shape: KernelShape, size: usize) -> Result<Self> {
        check_window_size(size)?;
        let r = (size / 2) as i64;
        let bits: Vec<bool> = (-r..=r)
            .flat_map(|dy| (-r..=r).map(move |dx| shape.contains(dx, dy, r)))
            .collect();
        let half_widths = bits
            .chunks(size)
            .map(|row| {
                let n = row.iter().filter(|&&b| b).count();
                debug_assert!(n % 2 == 1, "kernel rows must be centered runs");
                n / 2
            })
            .collect();
        Ok(Kernel {
            shape,
            size,
            bits,
            half_widths,
        })
    }

    pub fn full(size: usize) -> Result<Self> {
        Self::new(KernelShape::Full, size)
    }

    #[inline]
    pub fn shape(&self) -> KernelShape {
        self.shape
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn radius(&self) -> usize {
        self.size / 2
    }

    /// Row-major footprint, `size * size` entries.
    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, col: usize, row: usize) -> bool {
        self.bits[row * self.size + col]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Half-width of footprint row `row` (0-based from the top).
    #[inline]
    pub fn half_width(&self, row: usize) -> usize {
        self.half_widths[row]
    }

    pub fn is_full(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// `(dx, dy)` offsets of every set bit, relative to the anchor.
    pub fn offsets(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        let r = self.radius() as isize;
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(move |(i, _)| {
            let (row, col) = (i / self.size, i % self.size);
            (col as isize - r, row as isize - r)
        })
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.bits.chunks(self.size) {
            let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
