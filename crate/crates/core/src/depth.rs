//! The depth map value type and the inverted encoding used by the
//! morphological stages.
//!
//! Raw LIDAR depth maps store near surfaces as small values and missing
//! measurements as `0.0`. Max-based morphology on that encoding lets far
//! surfaces overwrite near ones, and cannot tell empties from close returns.
//! Inverting valid pixels as `100 - d` flips the ordering so nearer surfaces
//! win, and leaves a wide gap between the empty value and any real return
//! (returns are at most 80 m, so inverted values stay at or above 20).

use crate::error::{Error, Result};

/// Values at or below this many meters are treated as "no measurement".
pub const VALIDITY_THRESHOLD: f32 = 0.1;

/// Offset of the inverted encoding: `inverted = INVERSION_OFFSET - depth`.
pub const INVERSION_OFFSET: f32 = 100.0;

/// Largest direct depth (exclusive) that can be inverted. Anything at or
/// above it would land inside the empty band once inverted.
pub const MAX_INVERTIBLE_DEPTH: f32 = INVERSION_OFFSET - VALIDITY_THRESHOLD;

const MAX_PIXELS: usize = 1 << 30;

#[inline]
pub fn is_valid_depth(value: f32) -> bool {
    value > VALIDITY_THRESHOLD
}

/// Which encoding the values of a [`DepthMap`] are in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Encoding {
    /// Metric depth in meters.
    Direct,
    /// `100 - depth` for valid pixels.
    Inverted,
}

/// A dense grid of depth values, row-major, with `0.0` marking empty pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    width: usize,
    height: usize,
    data: Vec<f32>,
    encoding: Encoding,
}

fn check_dimensions(width: usize, height: usize) -> Result<usize> {
    match width.checked_mul(height) {
        Some(n) if width >= 1 && height >= 1 && n <= MAX_PIXELS => Ok(n),
        _ => Err(Error::InvalidDimensions { width, height }),
    }
}

impl DepthMap {
    /// An all-empty direct-encoded map.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        let n = check_dimensions(width, height)?;
        Ok(DepthMap {
            width,
            height,
            data: vec![0.0; n],
            encoding: Encoding::Direct,
        })
    }

    /// Builds a direct-encoded map from row-major depths in meters.
    ///
    /// Values at or below [`VALIDITY_THRESHOLD`] are normalized to exactly
    /// `0.0`. Negative or non-finite values are rejected.
    pub fn from_vec(width: usize, height: usize, data: Vec<f32>) -> Result<Self> {
        Self::from_vec_encoded(width, height, data, Encoding::Direct)
    }

    pub fn from_vec_encoded(
        width: usize,
        height: usize,
        mut data: Vec<f32>,
        encoding: Encoding,
    ) -> Result<Self> {
        let n = check_dimensions(width, height)?;
        if data.len() != n {
            return Err(Error::LengthMismatch {
                width,
                height,
                expected: n,
                actual: data.len(),
            });
        }
        for (i, v) in data.iter_mut().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::InvalidValue {
                    x: i % width,
                    y: i / width,
                    value: *v,
                });
            }
            if !is_valid_depth(*v) {
                *v = 0.0;
            }
        }
        Ok(DepthMap {
            width,
            height,
            data,
            encoding,
        })
    }

    /// Builds a map from `f(x, y)` evaluated at every pixel.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f32,
    ) -> Result<Self> {
        check_dimensions(width, height)?;
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::from_vec(width, height, data)
    }

    /// A map sharing this map's shape and encoding. `data` must come from an
    /// operation that preserves the value invariants; only the empty band is
    /// re-normalized.
    pub(crate) fn derive(&self, mut data: Vec<f32>) -> DepthMap {
        debug_assert_eq!(data.len(), self.data.len());
        // branch-free so the check vectorizes in test builds
        debug_assert!(data.iter().fold(true, |ok, v| ok & (v.is_finite() & (*v >= 0.0))));
        for v in &mut data {
            *v = if is_valid_depth(*v) { *v } else { 0.0 };
        }
        DepthMap {
            width: self.width,
            height: self.height,
            data,
            encoding: self.encoding,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false; maps have at least one pixel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[f32] {
        &self.data
    }

    pub fn into_values(self) -> Vec<f32> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f32] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    #[inline]
    pub fn is_valid(&self, x: usize, y: usize) -> bool {
        is_valid_depth(self.get(x, y))
    }

    pub fn valid_count(&self) -> usize {
        self.data.iter().filter(|&&v| is_valid_depth(v)).count()
    }

    /// Fraction of pixels holding a measurement.
    pub fn density(&self) -> f64 {
        self.valid_count() as f64 / self.data.len() as f64
    }

    /// Smallest and largest valid value, or `None` for an all-empty map.
    pub fn valid_range(&self) -> Option<(f32, f32)> {
        self.data
            .iter()
            .copied()
            .filter(|&v| is_valid_depth(v))
            .fold(None, |acc, v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
    }

    pub fn validity_mask(&self) -> ValidityMask {
        ValidityMask {
            width: self.width,
            height: self.height,
            bits: self.data.iter().map(|&v| is_valid_depth(v)).collect(),
        }
    }

    pub fn same_shape(&self, other: &DepthMap) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Switches a direct map to the inverted encoding.
    ///
    /// Every valid depth `d` becomes `100 - d`; empty pixels stay `0.0`.
    /// Depths of [`MAX_INVERTIBLE_DEPTH`] or more are rejected.
    pub fn invert(&self) -> Result<DepthMap> {
        self.expect_encoding(Encoding::Direct)?;
        if let Some(i) = self.data.iter().position(|&v| v >= MAX_INVERTIBLE_DEPTH) {
            return Err(Error::OutOfRange {
                x: i % self.width,
                y: i / self.width,
                value: self.data[i],
                limit: MAX_INVERTIBLE_DEPTH,
            });
        }
        let data = self.flipped();
        Ok(DepthMap {
            width: self.width,
            height: self.height,
            data,
            encoding: Encoding::Inverted,
        })
    }

    /// Returns an inverted map to metric depth.
    pub fn invert_back(&self) -> Result<DepthMap> {
        self.expect_encoding(Encoding::Inverted)?;
        let data = self.flipped();
        Ok(DepthMap {
            width: self.width,
            height: self.height,
            data,
            encoding: Encoding::Direct,
        })
    }

    /// `100 - v` for valid pixels, `0.0` elsewhere; the same map both ways.
    fn flipped(&self) -> Vec<f32> {
        let mut data = crate::buffer::take(self.data.len());
        for (d, &v) in data.iter_mut().zip(&self.data) {
            *d = if is_valid_depth(v) { INVERSION_OFFSET - v } else { 0.0 };
        }
        data
    }

    pub(crate) fn expect_encoding(&self, expected: Encoding) -> Result<()> {
        if self.encoding == expected {
            Ok(())
        } else {
            Err(Error::Encoding {
                expected,
                found: self.encoding,
            })
        }
    }

    pub(crate) fn expect_same_shape(&self, other: &DepthMap) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ))
        }
    }
}

/// One flag per pixel, `true` where the source map held a measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl ValidityMask {
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    #[inline]
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// True when every pixel set in `other` is also set here.
    pub fn contains(&self, other: &ValidityMask) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a || !b)
    }
}
