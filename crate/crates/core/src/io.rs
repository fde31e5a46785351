//! KITTI-style depth PNG codec, colormapped renderings, and file pairing.
//!
//! Depth PNGs are single-channel 16-bit images where `depth_m = raw / 256`
//! and `raw == 0` means no measurement.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::depth::{is_valid_depth, DepthMap, Encoding};
use crate::error::{Error, Result};

/// Raw units per meter.
pub const DEPTH_SCALE: f32 = 256.0;

/// Largest depth (exclusive) the codec can store.
pub const MAX_ENCODABLE_DEPTH: f32 = 256.0;

/// A decoded 16-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDepth {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u16>,
}

impl RawDepth {
    pub fn to_depth_map(&self) -> Result<DepthMap> {
        let data = self.data.iter().map(|&r| r as f32 / DEPTH_SCALE).collect();
        DepthMap::from_vec(self.width, self.height, data)
    }

    /// Quantizes a direct-encoded map: `raw = round(depth * 256)`.
    pub fn from_depth_map(map: &DepthMap) -> Result<Self> {
        if map.encoding() != Encoding::Direct {
            return Err(Error::Encoding {
                expected: Encoding::Direct,
                found: map.encoding(),
            });
        }
        let mut data = Vec::with_capacity(map.len());
        for (i, &v) in map.values().iter().enumerate() {
            if !is_valid_depth(v) {
                data.push(0);
            } else if v >= MAX_ENCODABLE_DEPTH {
                return Err(Error::OutOfRange {
                    x: i % map.width(),
                    y: i / map.width(),
                    value: v,
                    limit: MAX_ENCODABLE_DEPTH,
                });
            } else {
                data.push((v * DEPTH_SCALE).round().min(u16::MAX as f32) as u16);
            }
        }
        Ok(RawDepth {
            width: map.width(),
            height: map.height(),
            data,
        })
    }
}

fn encoder_for<W: Write>(
    w: W,
    width: usize,
    height: usize,
    color: png::ColorType,
    depth: png::BitDepth,
) -> png::Encoder<'static, W> {
    let mut enc = png::Encoder::new(w, width as u32, height as u32);
    enc.set_color(color);
    enc.set_depth(depth);
    // fixed settings keep output bytes reproducible
    enc.set_compression(png::Compression::Fast);
    enc.set_filter(png::Filter::Up);
    enc
}

/// Encodes 16-bit grayscale PNG bytes.
pub fn encode_raw_png(raw: &RawDepth) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    let be: Vec<u8> = raw.data.iter().flat_map(|v| v.to_be_bytes()).collect();
    let enc = encoder_for(
        &mut bytes,
        raw.width,
        raw.height,
        png::ColorType::Grayscale,
        png::BitDepth::Sixteen,
    );
    let to_err = |e: png::EncodingError| Error::format("<memory>", e.to_string());
    let mut writer = enc.write_header().map_err(to_err)?;
    writer.write_image_data(&be).map_err(to_err)?;
    writer.finish().map_err(to_err)?;
    Ok(bytes)
}

pub fn read_raw_png(path: impl AsRef<Path>) -> Result<RawDepth> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let fmt = |msg: String| Error::format(path, msg);
    let mut decoder = png::Decoder::new(BufReader::new(file));
    decoder.set_transformations(png::Transformations::IDENTITY);
    let mut reader = decoder.read_info().map_err(|e| fmt(e.to_string()))?;
    let info = reader.info();
    if info.color_type != png::ColorType::Grayscale || info.bit_depth != png::BitDepth::Sixteen {
        return Err(fmt(format!(
            "expected 16-bit grayscale, found {:?} at {:?}",
            info.color_type, info.bit_depth
        )));
    }
    let (width, height) = (info.width as usize, info.height as usize);
    if width == 0 || height == 0 {
        return Err(fmt("zero-sized image".into()));
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| fmt("image too large".into()))?;
    let mut buf = vec![0u8; size];
    let out = reader.next_frame(&mut buf).map_err(|e| fmt(e.to_string()))?;
    let data = buf[..out.buffer_size()]
        .chunks_exact(out.line_size)
        .flat_map(|line| {
            line[..width * 2]
                .chunks_exact(2)
                .map(|b| u16::from_be_bytes([b[0], b[1]]))
        })
        .collect();
    Ok(RawDepth {
        width,
        height,
        data,
    })
}

pub fn write_raw_png(raw: &RawDepth, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_raw_png(raw)?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Reads a depth PNG into a direct-encoded map.
pub fn read_depth_png(path: impl AsRef<Path>) -> Result<DepthMap> {
    read_raw_png(path)?.to_depth_map()
}

/// Writes a direct-encoded map as a depth PNG.
pub fn write_depth_png(map: &DepthMap, path: impl AsRef<Path>) -> Result<()> {
    write_raw_png(&RawDepth::from_depth_map(map)?, path)
}

/// Color stops of the blue-to-red ramp, evenly spaced over `[0, 1]`.
pub const RAMP: [[u8; 3]; 5] = [
    [0, 0, 255],
    [0, 255, 255],
    [0, 255, 0],
    [255, 255, 0],
    [255, 0, 0],
];

/// Maps `t` in `[0, 1]` onto [`RAMP`] by piecewise-linear interpolation.
pub fn ramp_color(t: f32) -> [u8; 3] {
    let t = if t.is_nan() { 0.0 } else { t.clamp(0.0, 1.0) };
    let segments = (RAMP.len() - 1) as f32;
    let pos = t * segments;
    let i = (pos.floor() as usize).min(RAMP.len() - 2);
    let f = pos - i as f32;
    let (a, b) = (RAMP[i], RAMP[i + 1]);
    let mut out = [0u8; 3];
    for c in 0..3 {
        out[c] = (a[c] as f32 + (b[c] as f32 - a[c] as f32) * f).round() as u8;
    }
    out
}

/// RGB bytes for a colormapped rendering. Zero-valued pixels are black.
pub fn colormap(values: &[f32], range_min: f32, range_max: f32) -> Result<Vec<u8>> {
    if !(range_min.is_finite() && range_max.is_finite() && range_max > range_min) {
        return Err(Error::InvalidParameter {
            name: "colormap range",
            value: (range_max - range_min) as f64,
        });
    }
    let span = range_max - range_min;
    Ok(values
        .iter()
        .flat_map(|&v| {
            if v <= 0.0 {
                [0, 0, 0]
            } else {
                ramp_color((v - range_min) / span)
            }
        })
        .collect())
}

/// Colors `|pred - gt|` where both maps are valid over `[0, range_max]`
/// meters; everything else is black, so zero error renders blue.
pub fn error_colormap(pred: &DepthMap, gt: &DepthMap, range_max: f32) -> Result<Vec<u8>> {
    if !(range_max.is_finite() && range_max > 0.0) {
        return Err(Error::InvalidParameter {
            name: "colormap range",
            value: range_max as f64,
        });
    }
    let err = crate::metrics::error_map(pred, gt)?;
    Ok(pred
        .values()
        .iter()
        .zip(gt.values())
        .zip(err)
        .flat_map(|((&p, &g), e)| {
            if is_valid_depth(p) && is_valid_depth(g) {
                ramp_color(e / range_max)
            } else {
                [0, 0, 0]
            }
        })
        .collect())
}

/// Encodes 8-bit RGB bytes (`width` x `height` x 3) as a PNG.
pub fn encode_rgb_png(rgb: &[u8], width: usize, height: usize) -> Result<Vec<u8>> {
    if rgb.len() != width * height * 3 || rgb.is_empty() {
        return Err(Error::LengthMismatch {
            width,
            height,
            expected: width * height * 3,
            actual: rgb.len(),
        });
    }
    let mut bytes = Vec::new();
    let enc = encoder_for(&mut bytes, width, height, png::ColorType::Rgb, png::BitDepth::Eight);
    let to_err = |e: png::EncodingError| Error::format("<memory>", e.to_string());
    let mut writer = enc.write_header().map_err(to_err)?;
    writer.write_image_data(rgb).map_err(to_err)?;
    writer.finish().map_err(to_err)?;
    Ok(bytes)
}

pub fn write_rgb_png(rgb: &[u8], width: usize, height: usize, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_rgb_png(rgb, width, height)?;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(&bytes).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Writes `values` (`width` x `height`) as a colormapped RGB PNG.
pub fn write_colormap_png(
    values: &[f32],
    width: usize,
    height: usize,
    path: impl AsRef<Path>,
    range_min: f32,
    range_max: f32,
) -> Result<()> {
    if values.len() != width * height {
        return Err(Error::LengthMismatch {
            width,
            height,
            expected: width * height,
            actual: values.len(),
        });
    }
    write_rgb_png(&colormap(values, range_min, range_max)?, width, height, path)
}

/// Reads an 8-bit RGB PNG back into `(width, height, rgb bytes)`.
pub fn read_rgb_png(path: impl AsRef<Path>) -> Result<(usize, usize, Vec<u8>)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let fmt = |msg: String| Error::format(path, msg);
    let mut reader = png::Decoder::new(BufReader::new(file))
        .read_info()
        .map_err(|e| fmt(e.to_string()))?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| fmt("image too large".into()))?;
    let mut buf = vec![0u8; size];
    let out = reader.next_frame(&mut buf).map_err(|e| fmt(e.to_string()))?;
    if out.color_type != png::ColorType::Rgb || out.bit_depth != png::BitDepth::Eight {
        return Err(fmt("expected 8-bit RGB".into()));
    }
    buf.truncate(out.buffer_size());
    Ok((out.width as usize, out.height as usize, buf))
}

/// A prediction and the ground truth it should be scored against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramePair {
    pub name: String,
    pub pred: PathBuf,
    pub gt: PathBuf,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<FramePair>,
    pub unmatched_pred: Vec<PathBuf>,
    pub unmatched_gt: Vec<PathBuf>,
}

/// Key used to match files across directories. Identical names match; so
/// do KITTI validation names that differ only in the `velodyne_raw` /
/// `groundtruth_depth` token.
pub fn pairing_key(file_name: &str) -> String {
    file_name
        .replace("groundtruth_depth", "*")
        .replace("velodyne_raw", "*")
}

/// Sorted `.png` files directly inside `dir`.
pub fn list_pngs(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let is_png = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("png"));
        if is_png && path.is_file() {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

fn keyed(paths: Vec<PathBuf>) -> BTreeMap<String, PathBuf> {
    paths
        .into_iter()
        .filter_map(|p| {
            let name = p.file_name()?.to_str()?.to_owned();
            Some((pairing_key(&name), p))
        })
        .collect()
}

/// Matches predictions to ground truth by file name.
pub fn enumerate_pairs(pred_dir: impl AsRef<Path>, gt_dir: impl AsRef<Path>) -> Result<Pairing> {
    let (pred_dir, gt_dir) = (pred_dir.as_ref(), gt_dir.as_ref());
    let preds = keyed(list_pngs(pred_dir)?);
    let mut gts = keyed(list_pngs(gt_dir)?);
    let mut pairing = Pairing::default();
    for (key, pred) in preds {
        match gts.remove(&key) {
            Some(gt) => pairing.pairs.push(FramePair {
                name: pred.file_name().unwrap().to_string_lossy().into_owned(),
                pred,
                gt,
            }),
            None => pairing.unmatched_pred.push(pred),
        }
    }
    pairing.unmatched_gt = gts.into_values().collect();
    if pairing.pairs.is_empty() {
        return Err(Error::NoPairs {
            pred: pred_dir.to_owned(),
            gt: gt_dir.to_owned(),
        });
    }
    Ok(pairing)
}
