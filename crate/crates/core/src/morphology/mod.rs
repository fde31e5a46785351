//! Grayscale morphology and smoothing over [`DepthMap`]s.
//!
//! Every operation returns a fresh map with the input's encoding and reads
//! outside the image as the nearest edge pixel ([`BorderPolicy::Replicate`]).
//! Zero-padding would read as "empty" in the inverted encoding and pull
//! borders toward no-data.

mod extremum;
mod median;
mod network;
mod smooth;

pub use smooth::{default_gaussian_sigma, gaussian_weights};

use crate::buffer;
use crate::depth::{is_valid_depth, DepthMap};
use crate::error::{Error, Result};
use crate::kernel::{check_window_size, Kernel};
use extremum::{Max, Min};

/// How neighborhoods are sampled past the image edge.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BorderPolicy {
    /// Out-of-bounds samples take the nearest in-bounds value.
    #[default]
    Replicate,
}

/// Grayscale dilation: the max over the kernel footprint.
///
/// On an inverted map this lets nearer surfaces (larger values) grow into
/// both farther surfaces and empty pixels.
pub fn dilate(map: &DepthMap, kernel: &Kernel) -> DepthMap {
    map.derive(max_filter(map.values(), map.width(), kernel))
}

/// Grayscale erosion: the min over the kernel footprint.
pub fn erode(map: &DepthMap, kernel: &Kernel) -> DepthMap {
    map.derive(min_filter(map.values(), map.width(), kernel))
}

/// Morphological closing, `erode(dilate(map))`.
pub fn close(map: &DepthMap, kernel: &Kernel) -> DepthMap {
    let dilated = dilate(map, kernel);
    let out = erode(&dilated, kernel);
    buffer::give(dilated.into_values());
    out
}

/// Dilation applied only where `map` is empty; valid pixels pass through.
pub fn masked_fill_dilate(map: &DepthMap, kernel: &Kernel) -> DepthMap {
    let mut data = max_filter(map.values(), map.width(), kernel);
    for (d, &v) in data.iter_mut().zip(map.values()) {
        if is_valid_depth(v) {
            *d = v;
        }
    }
    map.derive(data)
}

/// Copies the topmost valid value of each column into every row above it.
pub fn extend_to_top(map: &DepthMap) -> DepthMap {
    let (w, h) = (map.width(), map.height());
    let src = map.values();
    let mut data = buffer::take(w * h);
    data.copy_from_slice(src);
    // row-major scans: first the topmost valid row per column, then the fill
    let mut top = vec![usize::MAX; w];
    let mut open = w;
    for (y, row) in src.chunks_exact(w).enumerate() {
        if open == 0 {
            break;
        }
        for (t, &v) in top.iter_mut().zip(row) {
            if *t == usize::MAX && is_valid_depth(v) {
                *t = y;
                open -= 1;
            }
        }
    }
    for (y, row) in data.chunks_exact_mut(w).enumerate() {
        for (x, (d, &t)) in row.iter_mut().zip(&top).enumerate() {
            if y < t && t != usize::MAX {
                *d = src[t * w + x];
            }
        }
    }
    map.derive(data)
}

/// Median over `size x size` windows.
pub fn median_filter(map: &DepthMap, size: usize) -> Result<DepthMap> {
    check_window_size(size)?;
    Ok(map.derive(median_values(map.values(), map.width(), size)))
}

/// Separable Gaussian blur with a `size`-tap kernel.
pub fn gaussian_filter(map: &DepthMap, size: usize, sigma: f64) -> Result<DepthMap> {
    check_window_size(size)?;
    check_positive("sigma", sigma)?;
    Ok(map.derive(gaussian_values(map.values(), map.width(), size, sigma)))
}

/// Bilateral filter; `sigma_value` is in map units, `sigma_space` in pixels.
pub fn bilateral_filter(
    map: &DepthMap,
    size: usize,
    sigma_value: f64,
    sigma_space: f64,
) -> Result<DepthMap> {
    check_window_size(size)?;
    check_positive("sigma_value", sigma_value)?;
    check_positive("sigma_space", sigma_space)?;
    Ok(map.derive(smooth::bilateral(
        map.values(),
        map.width(),
        size,
        sigma_value,
        sigma_space,
    )))
}

/// Defines `$name` to run `$body` compiled for AVX2 when the CPU has it.
///
/// The kernels only use exact min/max and separately rounded multiplies and
/// adds, so both paths produce identical bits.
macro_rules! dispatch {
    ($name:ident($($arg:ident: $ty:ty),*) -> $ret:ty = $body:expr) => {
        fn $name($($arg: $ty),*) -> $ret {
            #[cfg(target_arch = "x86_64")]
            {
                #[target_feature(enable = "avx2")]
                fn avx2($($arg: $ty),*) -> $ret {
                    $body($($arg),*)
                }
                if std::arch::is_x86_feature_detected!("avx2") {
                    // SAFETY: the feature was detected at runtime
                    return unsafe { avx2($($arg),*) };
                }
            }
            $body($($arg),*)
        }
    };
}

dispatch!(max_filter(src: &[f32], width: usize, kernel: &Kernel) -> Vec<f32> = extremum::filter::<Max>);
dispatch!(min_filter(src: &[f32], width: usize, kernel: &Kernel) -> Vec<f32> = extremum::filter::<Min>);
dispatch!(median_values(src: &[f32], width: usize, size: usize) -> Vec<f32> = median::median);
dispatch!(gaussian_values(src: &[f32], width: usize, size: usize, sigma: f64) -> Vec<f32> = smooth::gaussian);

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::Encoding;
    use crate::kernel::KernelShape;

    fn inv(width: usize, height: usize, data: Vec<f32>) -> DepthMap {
        DepthMap::from_vec_encoded(width, height, data, Encoding::Inverted).unwrap()
    }

    #[test]
    fn single_source_floods_footprint() {
        let mut data = vec![0.0; 9];
        data[4] = 90.0;
        let out = dilate(&inv(3, 3, data), &Kernel::full(3).unwrap());
        assert_eq!(out.values(), &[90.0; 9]);
    }

    #[test]
    fn one_row_examples() {
        let k = Kernel::full(3).unwrap();
        // pixel 0 only reaches its right neighbor with a 3x3 footprint
        let out = dilate(&inv(3, 1, vec![30.0, 0.0, 80.0]), &k);
        assert_eq!(out.values(), &[30.0, 80.0, 80.0]);
        let out = dilate(&inv(3, 1, vec![30.0, 0.0, 80.0]), &Kernel::full(5).unwrap());
        assert_eq!(out.values(), &[80.0, 80.0, 80.0]);

        let out = erode(&inv(3, 1, vec![30.0, 50.0, 80.0]), &k);
        assert_eq!(out.values(), &[30.0, 30.0, 50.0]);

        let out = masked_fill_dilate(&inv(3, 1, vec![40.0, 0.0, 90.0]), &k);
        assert_eq!(out.values(), &[40.0, 90.0, 90.0]);
    }

    #[test]
    fn constant_maps_are_fixed_points() {
        let m = inv(7, 5, vec![33.0; 35]);
        for shape in KernelShape::ALL {
            let k = Kernel::new(shape, 5).unwrap();
            assert_eq!(erode(&m, &k), m);
            assert_eq!(dilate(&m, &k), m);
            assert_eq!(close(&m, &k), m);
        }
        assert_eq!(median_filter(&m, 5).unwrap(), m);
        assert_eq!(gaussian_filter(&m, 5, 1.1).unwrap(), m);
        assert_eq!(bilateral_filter(&m, 5, 1.5, 2.0).unwrap(), m);
    }

    #[test]
    fn close_fills_single_hole() {
        let mut data = vec![90.0; 25];
        data[12] = 0.0;
        let out = close(&inv(5, 5, data), &Kernel::full(5).unwrap());
        assert_eq!(out.values(), &[90.0; 25]);
    }

    #[test]
    fn fill_reach_is_bounded() {
        // valid only at the two ends of a 1x21 strip
        let mut data = vec![0.0; 21];
        data[0] = 50.0;
        data[20] = 60.0;
        let out = masked_fill_dilate(&inv(21, 1, data), &Kernel::full(7).unwrap());
        let valid: Vec<bool> = out.values().iter().map(|&v| v > 0.0).collect();
        for (i, &v) in valid.iter().enumerate() {
            assert_eq!(v, i <= 3 || i >= 17, "pixel {i}");
        }
    }

    #[test]
    fn fully_valid_map_untouched_by_fill() {
        let data: Vec<f32> = (0..20).map(|i| 20.0 + i as f32).collect();
        let m = inv(5, 4, data);
        assert_eq!(masked_fill_dilate(&m, &Kernel::full(7).unwrap()), m);
        assert_eq!(extend_to_top(&m), m);
    }

    #[test]
    fn extend_column() {
        let m = inv(1, 4, vec![0.0, 0.0, 70.0, 50.0]);
        assert_eq!(extend_to_top(&m).values(), &[70.0, 70.0, 70.0, 50.0]);
        let m = inv(2, 3, vec![0.0, 0.0, 0.0, 5.0, 0.0, 0.0]);
        assert_eq!(extend_to_top(&m).values(), &[0.0, 5.0, 0.0, 5.0, 0.0, 0.0]);
    }

    #[test]
    fn parameter_errors() {
        let m = inv(4, 4, vec![1.0; 16]);
        assert!(matches!(median_filter(&m, 4), Err(Error::InvalidKernelSize(4))));
        assert!(gaussian_filter(&m, 5, 0.0).is_err());
        assert!(gaussian_filter(&m, 5, -1.0).is_err());
        assert!(gaussian_filter(&m, 2, 1.0).is_err());
        assert!(bilateral_filter(&m, 5, 0.0, 2.0).is_err());
        assert!(bilateral_filter(&m, 5, 1.5, f64::NAN).is_err());
    }

    #[test]
    fn large_kernel_on_tiny_map() {
        let m = inv(2, 1, vec![0.0, 40.0]);
        let out = masked_fill_dilate(&m, &Kernel::full(31).unwrap());
        assert_eq!(out.values(), &[40.0, 40.0]);
    }

    #[test]
    fn encoding_preserved() {
        let m = DepthMap::from_vec(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(dilate(&m, &Kernel::full(3).unwrap()).encoding(), Encoding::Direct);
        let m = inv(2, 2, vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(median_filter(&m, 3).unwrap().encoding(), Encoding::Inverted);
    }
}
