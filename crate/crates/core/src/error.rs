use std::path::PathBuf;

use crate::depth::Encoding;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("expected {expected} values for a {width}x{height} map, got {actual}")]
    LengthMismatch {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("depth value {value} at ({x}, {y}) is negative or not finite")]
    InvalidValue { x: usize, y: usize, value: f32 },

    #[error("depth value {value} m at ({x}, {y}) is outside the invertible range (must be < {limit} m)")]
    OutOfRange {
        x: usize,
        y: usize,
        value: f32,
        limit: f32,
    },

    #[error("expected {expected:?} encoding, found {found:?}")]
    Encoding { expected: Encoding, found: Encoding },

    #[error("kernel size {0} must be odd and at least 3")]
    InvalidKernelSize(usize),

    #[error("kernel size {size} is too large for a {width}x{height} map")]
    KernelTooLarge {
        size: usize,
        width: usize,
        height: usize,
    },

    #[error("{name} must be positive, got {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("input has no valid depth pixels")]
    NoValidPixels,

    #[error("no pixels are valid in both prediction and ground truth")]
    NoOverlap,

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("no matching file names between {pred} and {gt}")]
    NoPairs { pred: PathBuf, gt: PathBuf },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            message: message.into(),
        }
    }
}
