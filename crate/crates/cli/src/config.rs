//! Run configuration.
//!
//! ```json
//! {
//!   "space": {"kind": "lp", "p": 2},
//!   "n_max": 8,
//!   "window": 16,
//!   "corpus": {"type": "random", "size": 50, "seed": 7,
//!              "support_size_range": [1, 12],
//!              "coefficient_distribution": {"type": "uniform"}},
//!   "checks": ["theorem_1", "lemma_2_3"],
//!   "slack_factor": 1.0,
//!   "output_dir": "out"
//! }
//! ```
//!
//! Everything except `space` has a default. A relative corpus `path` is
//! resolved against the directory of the config file.

use std::fs;
use std::path::{Path, PathBuf};

use qgreedy::approx::EXHAUSTIVE_LIMIT;
use qgreedy::verify::CheckId;
use qgreedy::SpaceSpec;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::formats::SpaceDto;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientDistribution {
    /// Uniform on `(-1, 1)`.
    Uniform,
    /// Standard normal.
    Normal,
    /// `±rho^j` for the `j`-th support element in a random order.
    GeometricDecay { rho: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    Random,
    Witness,
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    #[serde(rename = "type")]
    pub kind: CorpusKind,
    pub size: usize,
    pub seed: u64,
    pub support_size_range: [usize; 2],
    /// Supports are drawn from `{1..index_range}`; defaults to twice the
    /// largest support size.
    pub index_range: Option<usize>,
    pub coefficient_distribution: CoefficientDistribution,
    pub path: Option<PathBuf>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            kind: CorpusKind::Random,
            size: 50,
            seed: 0,
            support_size_range: [1, 12],
            index_range: None,
            coefficient_distribution: CoefficientDistribution::Uniform,
            path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawConfig {
    pub space: Option<SpaceDto>,
    pub n_max: usize,
    pub window: Option<usize>,
    pub corpus: CorpusConfig,
    pub checks: Option<Vec<String>>,
    pub slack_factor: f64,
    pub output_dir: PathBuf,
    pub epsilon: f64,
    pub log_x: bool,
    pub parallel: bool,
}

impl Default for RawConfig {
    fn default() -> Self {
        Self {
            space: None,
            n_max: 8,
            window: None,
            corpus: CorpusConfig::default(),
            checks: None,
            slack_factor: 1.0,
            output_dir: PathBuf::from("out"),
            epsilon: 0.01,
            log_x: false,
            parallel: true,
        }
    }
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub space: SpaceSpec,
    pub n_max: usize,
    pub window: usize,
    pub corpus: CorpusConfig,
    pub checks: Vec<CheckId>,
    pub slack_factor: f64,
    pub output_dir: PathBuf,
    pub epsilon: f64,
    pub log_x: bool,
    pub parallel: bool,
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut raw: RawConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::json(path.display().to_string(), e))?;
        if let (Some(corpus_path), Some(dir)) = (&raw.corpus.path, path.parent()) {
            if corpus_path.is_relative() {
                raw.corpus.path = Some(dir.join(corpus_path));
            }
        }
        Ok(raw)
    }

    pub fn validate(self) -> Result<RunConfig> {
        let space = self
            .space
            .as_ref()
            .ok_or_else(|| {
                CliError::Config("no space given (use --space or a config file)".into())
            })?
            .to_space()?;
        if self.n_max == 0 {
            return Err(CliError::Config("n_max must be positive".into()));
        }
        let window = self
            .window
            .unwrap_or_else(|| (2 * self.n_max).max(space.min_window(self.n_max)));
        if window < self.n_max || !space.window_feasible(self.n_max, window) {
            return Err(CliError::Config(format!(
                "window {window} must hold n_max = {} indices of every component (minimum {})",
                self.n_max,
                space.min_window(self.n_max)
            )));
        }
        let checks = match &self.checks {
            None => CheckId::ALL.to_vec(),
            Some(names) => names
                .iter()
                .map(|n| {
                    CheckId::parse(n)
                        .ok_or_else(|| CliError::Config(format!("unknown check {n:?}")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        if !(self.slack_factor.is_finite() && self.slack_factor >= 0.0) {
            return Err(CliError::Config(format!(
                "slack_factor {} must be >= 0",
                self.slack_factor
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(CliError::Config(format!(
                "epsilon {} must be positive",
                self.epsilon
            )));
        }
        validate_corpus(&self.corpus)?;
        Ok(RunConfig {
            space,
            n_max: self.n_max,
            window,
            corpus: self.corpus,
            checks,
            slack_factor: self.slack_factor,
            output_dir: self.output_dir,
            epsilon: self.epsilon,
            log_x: self.log_x,
            parallel: self.parallel,
        })
    }
}

fn validate_corpus(c: &CorpusConfig) -> Result<()> {
    match c.kind {
        CorpusKind::File => {
            if c.path.is_none() {
                return Err(CliError::Config("file corpus needs a path".into()));
            }
        }
        CorpusKind::Witness => {
            if c.size == 0 {
                return Err(CliError::Config("corpus size must be positive".into()));
            }
        }
        CorpusKind::Random => {
            let [lo, hi] = c.support_size_range;
            if c.size == 0 {
                return Err(CliError::Config("corpus size must be positive".into()));
            }
            if lo == 0 || lo > hi || hi > EXHAUSTIVE_LIMIT {
                return Err(CliError::Config(format!(
                    "support_size_range [{lo}, {hi}] must satisfy 1 <= lo <= hi <= {EXHAUSTIVE_LIMIT}"
                )));
            }
            if c.index_range.is_some_and(|r| r < hi) {
                return Err(CliError::Config(
                    "index_range is smaller than the largest support".into(),
                ));
            }
            if let CoefficientDistribution::GeometricDecay { rho } = c.coefficient_distribution {
                if !(rho > 0.0 && rho <= 1.0) {
                    return Err(CliError::Config(format!(
                        "geometric decay rho {rho} must lie in (0, 1]"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(json: &str) -> RawConfig {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = raw(r#"{"space": {"kind": "lp", "p": 2}}"#)
            .validate()
            .unwrap();
        assert_eq!(cfg.n_max, 8);
        assert_eq!(cfg.window, 16);
        assert_eq!(cfg.checks.len(), CheckId::ALL.len());
        assert_eq!(cfg.slack_factor, 1.0);
        assert_eq!(cfg.epsilon, 0.01);
    }

    #[test]
    fn window_must_be_feasible() {
        let ds = r#"{"kind": "direct_sum", "components": [{"kind": "lp", "p": 1}, {"kind": "lp", "p": 2}]}"#;
        let ok = raw(&format!(r#"{{"space": {ds}, "n_max": 4}}"#))
            .validate()
            .unwrap();
        assert_eq!(ok.window, 8);
        let err = raw(&format!(r#"{{"space": {ds}, "n_max": 4, "window": 6}}"#))
            .validate()
            .unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
    }

    #[test]
    fn rejects_bad_fields() {
        for json in [
            r#"{}"#,
            r#"{"space": {"kind": "lp", "p": 2}, "n_max": 0}"#,
            r#"{"space": {"kind": "lp", "p": 2}, "checks": ["theorem_9"]}"#,
            r#"{"space": {"kind": "lp", "p": 2}, "slack_factor": -1}"#,
            r#"{"space": {"kind": "lp", "p": 2}, "corpus": {"support_size_range": [0, 3]}}"#,
            r#"{"space": {"kind": "lp", "p": 2}, "corpus": {"support_size_range": [1, 30]}}"#,
            r#"{"space": {"kind": "lp", "p": 2}, "corpus": {"type": "file"}}"#,
        ] {
            assert!(raw(json).validate().is_err(), "{json}");
        }
        assert!(serde_json::from_str::<RawConfig>(r#"{"nmax": 3}"#).is_err());
    }

    #[test]
    fn distribution_tags() {
        let c: CorpusConfig = serde_json::from_str(
            r#"{"coefficient_distribution": {"type": "geometric_decay", "rho": 0.5}}"#,
        )
        .unwrap();
        assert_eq!(
            c.coefficient_distribution,
            CoefficientDistribution::GeometricDecay { rho: 0.5 }
        );
    }
}
