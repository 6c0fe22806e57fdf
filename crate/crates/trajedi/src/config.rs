//! Experiment configuration files.
//!
//! Flat `key = value` format: one assignment per line, `#` starts a
//! comment, lists are comma-separated. Unknown keys are errors. Every key
//! can be overridden by a CLI flag of the same name.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::Extent;
use crate::scheme::Mode;
use crate::synth::GeneratorConfig;
use crate::window::Alpha;

/// A fully validated experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// CSV paths of the input pair; `None` when generating inline.
    pub dataset_truth: Option<PathBuf>,
    pub dataset_degraded: Option<PathBuf>,
    /// Inline generator settings; set when `generate_num` is present.
    pub generator: Option<GeneratorConfig>,
    pub grid_n: usize,
    /// Data-space extent; defaults to `[0, grid_n] x [0, grid_n]`.
    pub extent: Option<Extent>,
    /// Snap threshold; defaults to half the cell diagonal.
    pub align_threshold: Option<f64>,
    /// Interpolation threshold; defaults to half the smaller cell dimension.
    pub complement_threshold: Option<f64>,
    pub modes: Vec<Mode>,
    pub alphas: Vec<f64>,
    pub strategies: Vec<String>,
    pub seed: u64,
    pub output: PathBuf,
    pub parallel: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dataset_truth: None,
            dataset_degraded: None,
            generator: None,
            grid_n: 1000,
            extent: None,
            align_threshold: None,
            complement_threshold: None,
            modes: vec![Mode::None, Mode::Full, Mode::Trajedi],
            alphas: Vec::new(),
            strategies: vec!["random".into(), "furthest".into(), "shortest".into()],
            seed: 0,
            output: PathBuf::from("results.csv"),
            parallel: true,
        }
    }
}

impl ExperimentConfig {
    /// The effective data-space extent.
    pub fn effective_extent(&self) -> Result<Extent> {
        match self.extent {
            Some(e) => Ok(e),
            None => Extent::square(self.grid_n as f64),
        }
    }

    /// Validates cross-field constraints; called after all overrides.
    pub fn validate(&self) -> Result<()> {
        for &a in &self.alphas {
            Alpha::new(a)?;
        }
        if self.modes.is_empty() {
            return Err(Error::usage("at least one mode is required"));
        }
        if self.modes.contains(&Mode::Trajedi) {
            if self.alphas.is_empty() {
                return Err(Error::usage("trajedi mode requires at least one alpha"));
            }
            if self.strategies.is_empty() {
                return Err(Error::usage("trajedi mode requires at least one strategy"));
            }
        }
        for s in &self.strategies {
            crate::scheme::PartnerStrategy::from_name(s, 0)?;
        }
        match (&self.dataset_truth, &self.dataset_degraded, &self.generator) {
            (Some(truth), Some(degraded), _) => {
                for path in [truth, degraded] {
                    if !path.exists() {
                        return Err(Error::usage(format!(
                            "missing dataset file {}",
                            path.display()
                        )));
                    }
                }
                Ok(())
            }
            (None, None, Some(_)) => Ok(()),
            _ => Err(Error::usage(
                "config must name both dataset_truth and dataset_degraded, or set generate_num",
            )),
        }
    }

    /// Label used for the results CSV `dataset` column.
    pub fn dataset_label(&self) -> String {
        match &self.dataset_degraded {
            Some(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string()),
            None => "generated".to_string(),
        }
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    let config = parse_config_str(&text, path)?;
    config.validate()?;
    Ok(config)
}

/// Parses configuration text without the file-existence validation pass.
pub fn parse_config_str(text: &str, origin: &Path) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::default();
    // Generator keys are collected separately; their presence switches the
    // experiment to inline generation.
    let mut generate_num: Option<usize> = None;
    let mut generate_length: Option<usize> = None;
    let mut generate_keep_mean: Option<f64> = None;
    let mut generate_keep_sd: Option<f64> = None;
    let mut generate_noise_sd: Option<f64> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::parse(origin, line_no, format!("expected 'key = value', got '{line}'"))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |message: String| Error::parse(origin, line_no, message);

        match key {
            "dataset_truth" => config.dataset_truth = Some(PathBuf::from(value)),
            "dataset_degraded" => config.dataset_degraded = Some(PathBuf::from(value)),
            "generate_num" => generate_num = Some(parse_num(key, value).map_err(bad)?),
            "generate_length" => generate_length = Some(parse_num(key, value).map_err(bad)?),
            "generate_keep_mean" => generate_keep_mean = Some(parse_float(key, value).map_err(bad)?),
            "generate_keep_sd" => generate_keep_sd = Some(parse_float(key, value).map_err(bad)?),
            "generate_noise_sd" => generate_noise_sd = Some(parse_float(key, value).map_err(bad)?),
            "grid_n" => config.grid_n = parse_num(key, value).map_err(bad)?,
            "extent" => config.extent = Some(parse_extent(value).map_err(bad)?),
            "align_threshold" => config.align_threshold = Some(parse_float(key, value).map_err(bad)?),
            "complement_threshold" => {
                config.complement_threshold = Some(parse_float(key, value).map_err(bad)?)
            }
            "modes" => {
                config.modes = split_list(value)
                    .map(|m| m.parse::<Mode>())
                    .collect::<Result<_>>()
                    .map_err(|e| bad(e.to_string()))?;
            }
            "alphas" => {
                config.alphas = split_list(value)
                    .map(|a| {
                        let v = parse_float("alphas", a)?;
                        Alpha::new(v).map_err(|e| e.to_string())?;
                        Ok(v)
                    })
                    .collect::<std::result::Result<_, String>>()
                    .map_err(bad)?;
            }
            "strategies" => config.strategies = split_list(value).map(String::from).collect(),
            "seed" => config.seed = parse_num(key, value).map_err(bad)?,
            "output" => config.output = PathBuf::from(value),
            "parallel" => {
                config.parallel = value.parse::<bool>().map_err(|_| {
                    bad(format!("parallel must be true or false, got '{value}'"))
                })?;
            }
            other => {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("unknown key '{other}'"),
                ))
            }
        }
    }

    if let Some(num) = generate_num {
        let mut generator = GeneratorConfig {
            num_trajectories: num,
            grid_n: config.grid_n,
            seed: config.seed,
            ..GeneratorConfig::default()
        };
        if let Some(v) = generate_length {
            generator.initial_length = v;
        }
        if let Some(v) = generate_keep_mean {
            generator.keep_mean = v;
        }
        if let Some(v) = generate_keep_sd {
            generator.keep_sd = v;
        }
        if let Some(v) = generate_noise_sd {
            generator.noise_sd = v;
        }
        config.generator = Some(generator);
    }
    Ok(config)
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value '{value}' for {key}"))
}

fn parse_float(key: &str, value: &str) -> std::result::Result<f64, String> {
    let v: f64 = value
        .parse()
        .map_err(|_| format!("invalid value '{value}' for {key}"))?;
    if !v.is_finite() {
        return Err(format!("{key} must be finite, got '{value}'"));
    }
    Ok(v)
}

/// Parses `min_x,min_y,max_x,max_y`.
pub fn parse_extent(value: &str) -> std::result::Result<Extent, String> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!(
            "extent needs four comma-separated numbers, got '{value}'"
        ));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| parse_float("extent", p))
        .collect::<std::result::Result<_, _>>()?;
    Extent::new(nums[0], nums[1], nums[2], nums[3]).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin() -> PathBuf {
        PathBuf::from("test.cfg")
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config_str(
            "generate_num = 8\nalphas = 0.5\n",
            &origin(),
        )
        .unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.grid_n, 1000);
        assert_eq!(cfg.seed, 0);
        assert!(cfg.parallel);
        assert_eq!(cfg.modes, vec![Mode::None, Mode::Full, Mode::Trajedi]);
        assert_eq!(cfg.strategies.len(), 3);
        assert_eq!(cfg.alphas, vec![0.5]);
        assert_eq!(cfg.generator.as_ref().unwrap().num_trajectories, 8);
        assert_eq!(cfg.output, PathBuf::from("results.csv"));
    }

    #[test]
    fn alpha_out_of_range_rejected() {
        let err = parse_config_str("alphas = 1.5\n", &origin()).unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
    }

    #[test]
    fn unknown_key_named() {
        let err = parse_config_str("foo = 1\n", &origin()).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("foo") && text.contains("line 1"), "{text}");
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let cfg = parse_config_str(
            "# experiment\n\ngenerate_num = 4 # inline\nalphas = 0.2, 0.4\nmodes = none, trajedi\n",
            &origin(),
        )
        .unwrap();
        assert_eq!(cfg.alphas, vec![0.2, 0.4]);
        assert_eq!(cfg.modes, vec![Mode::None, Mode::Trajedi]);
    }

    #[test]
    fn missing_dataset_rejected() {
        let cfg = parse_config_str("alphas = 0.5\n", &origin()).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn nonexistent_files_rejected() {
        let cfg = parse_config_str(
            "dataset_truth = /nonexistent/a.csv\ndataset_degraded = /nonexistent/b.csv\nalphas = 0.5\n",
            &origin(),
        )
        .unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn trajedi_requires_alphas() {
        let cfg = parse_config_str("generate_num = 4\nmodes = trajedi\n", &origin()).unwrap();
        assert!(cfg.validate().is_err());
        let cfg =
            parse_config_str("generate_num = 4\nmodes = none, full\n", &origin()).unwrap();
        cfg.validate().unwrap();
    }

    #[test]
    fn generator_inherits_seed_and_grid() {
        let cfg = parse_config_str(
            "generate_num = 4\ngrid_n = 64\nseed = 99\nalphas = 0.3\n",
            &origin(),
        )
        .unwrap();
        let generator = cfg.generator.unwrap();
        assert_eq!(generator.grid_n, 64);
        assert_eq!(generator.seed, 99);
    }

    #[test]
    fn extent_parses_or_defaults() {
        let cfg = parse_config_str(
            "generate_num = 4\nalphas = 0.3\nextent = 0, 0, 10, 20\n",
            &origin(),
        )
        .unwrap();
        let e = cfg.effective_extent().unwrap();
        assert_eq!((e.min_x, e.min_y, e.max_x, e.max_y), (0.0, 0.0, 10.0, 20.0));

        let cfg = parse_config_str("generate_num = 4\ngrid_n = 32\nalphas = 0.3\n", &origin())
            .unwrap();
        let e = cfg.effective_extent().unwrap();
        assert_eq!((e.max_x, e.max_y), (32.0, 32.0));
    }
}
