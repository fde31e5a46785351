//! The flat `key = value` config document.
//!
//! Every [`PipelineConfig`] field has a key. Blank lines and `#` comments
//! are ignored, keys missing from a document keep their defaults, and
//! unknown or repeated keys are errors.

use std::collections::HashSet;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use depthfill::{BlurMode, FillMode, KernelShape, PipelineConfig};

/// Document keys in render order.
pub const KEYS: [&str; 14] = [
    "dilation_shape",
    "dilation_size",
    "closure_size",
    "small_fill_size",
    "large_fill_size",
    "large_fill_max_iters",
    "blur_mode",
    "median_size",
    "gaussian_size",
    "gaussian_sigma",
    "bilateral_size",
    "bilateral_sigma_value",
    "bilateral_sigma_space",
    "fill_mode",
];

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: Display,
{
    value
        .parse()
        .map_err(|e| anyhow!("invalid value `{value}` for {key}: {e}"))
}

/// Sets one field by document key.
pub fn set(config: &mut PipelineConfig, key: &str, value: &str) -> Result<()> {
    let c = config;
    match key {
        "dilation_shape" => c.dilation_shape = parse_value(key, value)?,
        "dilation_size" => c.dilation_size = parse_value(key, value)?,
        "closure_size" => c.closure_size = parse_value(key, value)?,
        "small_fill_size" => c.small_fill_size = parse_value(key, value)?,
        "large_fill_size" => c.large_fill_size = parse_value(key, value)?,
        "large_fill_max_iters" => c.large_fill_max_iters = parse_value(key, value)?,
        "blur_mode" => c.blur_mode = parse_value(key, value)?,
        "median_size" => c.median_size = parse_value(key, value)?,
        "gaussian_size" => c.gaussian_size = parse_value(key, value)?,
        "gaussian_sigma" => c.gaussian_sigma = parse_value(key, value)?,
        "bilateral_size" => c.bilateral_size = parse_value(key, value)?,
        "bilateral_sigma_value" => c.bilateral_sigma_value = parse_value(key, value)?,
        "bilateral_sigma_space" => c.bilateral_sigma_space = parse_value(key, value)?,
        "fill_mode" => c.fill_mode = parse_value(key, value)?,
        _ => bail!("unknown config key `{key}`"),
    }
    Ok(())
}

fn get(c: &PipelineConfig, key: &str) -> String {
    match key {
        "dilation_shape" => c.dilation_shape.to_string(),
        "dilation_size" => c.dilation_size.to_string(),
        "closure_size" => c.closure_size.to_string(),
        "small_fill_size" => c.small_fill_size.to_string(),
        "large_fill_size" => c.large_fill_size.to_string(),
        "large_fill_max_iters" => c.large_fill_max_iters.to_string(),
        "blur_mode" => c.blur_mode.to_string(),
        "median_size" => c.median_size.to_string(),
        "gaussian_size" => c.gaussian_size.to_string(),
        // `Display` for f64 is the shortest string that parses back exactly
        "gaussian_sigma" => c.gaussian_sigma.to_string(),
        "bilateral_size" => c.bilateral_size.to_string(),
        "bilateral_sigma_value" => c.bilateral_sigma_value.to_string(),
        "bilateral_sigma_space" => c.bilateral_sigma_space.to_string(),
        "fill_mode" => c.fill_mode.to_string(),
        _ => unreachable!("not a config key: {key}"),
    }
}

/// Applies a document on top of `base` and validates the result.
pub fn apply(base: PipelineConfig, text: &str) -> Result<PipelineConfig> {
    let mut config = base;
    let mut seen = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {lineno}: expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_owned()) {
            bail!("line {lineno}: duplicate key `{key}`");
        }
        set(&mut config, key, value).with_context(|| format!("line {lineno}"))?;
    }
    config.validate()?;
    Ok(config)
}

/// Parses a full document over the defaults.
pub fn parse(text: &str) -> Result<PipelineConfig> {
    apply(PipelineConfig::default(), text)
}

pub fn render(config: &PipelineConfig) -> String {
    KEYS.iter()
        .map(|k| format!("{k} = {}\n", get(config, k)))
        .collect()
}

pub fn load(path: &Path) -> Result<PipelineConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    parse(&text).with_context(|| format!("config {}", path.display()))
}

/// Config overrides shared by every subcommand that runs the pipeline.
/// Flags beat the `--config` file, which beats the defaults.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ConfigArgs {
    /// Config document (`key = value` lines).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// full, circle, cross or diamond.
    #[arg(long, value_name = "SHAPE")]
    pub dilation_shape: Option<KernelShape>,
    /// Odd side length of the first dilation kernel.
    #[arg(long, value_name = "N")]
    pub dilation_size: Option<usize>,
    /// Full kernel that closes small holes.
    #[arg(long, value_name = "N")]
    pub closure_size: Option<usize>,
    /// Full kernel for the first masked fill.
    #[arg(long, value_name = "N")]
    pub small_fill_size: Option<usize>,
    /// Full kernel for the repeated masked fill.
    #[arg(long, value_name = "N")]
    pub large_fill_size: Option<usize>,
    /// Cap on repeated large fills.
    #[arg(long, value_name = "N")]
    pub large_fill_max_iters: Option<usize>,
    /// none, bilateral, median, median_bilateral, gaussian or median_gaussian.
    #[arg(long, value_name = "MODE")]
    pub blur_mode: Option<BlurMode>,
    #[arg(long, value_name = "N")]
    pub median_size: Option<usize>,
    #[arg(long, value_name = "N")]
    pub gaussian_size: Option<usize>,
    /// Gaussian standard deviation in pixels.
    #[arg(long, value_name = "SIGMA")]
    pub gaussian_sigma: Option<f64>,
    #[arg(long, value_name = "N")]
    pub bilateral_size: Option<usize>,
    #[arg(long, value_name = "SIGMA")]
    pub bilateral_sigma_value: Option<f64>,
    #[arg(long, value_name = "SIGMA")]
    pub bilateral_sigma_space: Option<f64>,
    /// `full` forces a dense output; `partial` keeps holes that have no
    /// nearby measurement.
    #[arg(long, value_name = "MODE")]
    pub fill_mode: Option<FillMode>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<PipelineConfig> {
        let mut c = match &self.config {
            Some(path) => load(path)?,
            None => PipelineConfig::default(),
        };
        macro_rules! over {
            ($($field:ident),+) => {
                $(if let Some(v) = self.$field {
                    c.$field = v;
                })+
            };
        }
        over!(
            dilation_shape,
            dilation_size,
            closure_size,
            small_fill_size,
            large_fill_size,
            large_fill_max_iters,
            blur_mode,
            median_size,
            gaussian_size,
            gaussian_sigma,
            bilateral_size,
            bilateral_sigma_value,
            bilateral_sigma_space,
            fill_mode
        );
        c.validate()?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_document_lists_every_key() {
        let text = render(&PipelineConfig::default());
        assert_eq!(text.lines().count(), KEYS.len());
        assert!(text.starts_with("dilation_shape = diamond\n"));
        assert!(text.contains("blur_mode = median_gaussian\n"));
        assert_eq!(parse(&text).unwrap(), PipelineConfig::default());
    }

    #[test]
    fn comments_blanks_and_partial_documents() {
        let c = parse("# ablation\n\ndilation_shape = cross  # inline\nblur_mode=none\n").unwrap();
        assert_eq!(c.dilation_shape, KernelShape::Cross);
        assert_eq!(c.blur_mode, BlurMode::None);
        assert_eq!(c.fill_mode, FillMode::Full);
        assert_eq!(c.dilation_size, 5);
    }

    #[test]
    fn bad_documents_are_rejected() {
        for (text, needle) in [
            ("dilation_sizes = 5", "unknown config key"),
            ("dilation_size = 5\ndilation_size = 7", "duplicate"),
            ("dilation_size", "expected `key = value`"),
            ("dilation_size = five", "invalid value"),
            ("blur_mode = box", "invalid value"),
            ("dilation_size = 4", "odd"),
            ("gaussian_sigma = -1", "positive"),
        ] {
            let err = format!("{:#}", parse(text).unwrap_err());
            assert!(err.contains(needle), "{text:?}: {err}");
        }
    }
}
