//! Flat `key = value` experiment configuration.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::metrics::DEFAULT_N0;
use crate::protocol::{validate_params, Policy, ProtocolParams};
use crate::voter::{load_similarity_file, BuiltinKind, ComparisonMode, SimilarityDistribution};

/// Recognized configuration keys.
pub const CONFIG_KEYS: [&str; 17] = [
    "n_items",
    "m",
    "alpha",
    "n_ballots",
    "policy",
    "distribution",
    "similarity_file",
    "mode",
    "n_voters",
    "sigma_min",
    "sigma_max",
    "eps_min",
    "eps_max",
    "replicates",
    "seed",
    "n0",
    "out_dir",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionChoice {
    Builtin(BuiltinKind),
    File,
}

/// Everything a simulation run depends on. Defaults reproduce the
/// 990-item, 100-voter reference setup.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_items: usize,
    pub m: usize,
    pub alpha: f64,
    pub n_ballots: usize,
    /// Policies to run, each over the same replicate seeds.
    pub policies: Vec<Policy>,
    pub distribution: DistributionChoice,
    pub similarity_file: Option<PathBuf>,
    pub mode: ComparisonMode,
    pub n_voters: usize,
    pub sigma_range: (f64, f64),
    pub eps_range: (f64, f64),
    pub replicates: usize,
    pub seed: u64,
    pub n0: u32,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_items: 990,
            m: 20,
            alpha: 0.5,
            n_ballots: 7,
            policies: vec![Policy::Uniform, Policy::Adaptive],
            distribution: DistributionChoice::Builtin(BuiltinKind::Exponential),
            similarity_file: None,
            mode: ComparisonMode::Relatedness,
            n_voters: 100,
            sigma_range: (0.02, 0.2),
            eps_range: (0.005, 0.05),
            replicates: 50,
            seed: 1,
            n0: DEFAULT_N0,
            out_dir: PathBuf::from("results"),
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for '{key}'")))
}

impl ExperimentConfig {
    /// Parses `key = value` lines on top of the defaults. `#` starts a
    /// comment; blank lines are ignored; unknown keys are errors.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected 'key = value', got '{raw}'",
                    idx + 1
                ))
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", idx + 1)))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        let mut cfg = Self::parse_str(&text)?;
        // relative similarity files resolve against the config's directory
        if let (Some(file), Some(dir)) = (&cfg.similarity_file, path.parent()) {
            if file.is_relative() && !file.exists() {
                cfg.similarity_file = Some(dir.join(file));
            }
        }
        Ok(cfg)
    }

    /// Applies a single setting, as from a config line or a CLI override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n_items" => self.n_items = parse(key, value)?,
            "m" => self.m = parse(key, value)?,
            "alpha" => self.alpha = parse(key, value)?,
            "n_ballots" => self.n_ballots = parse(key, value)?,
            "policy" => {
                self.policies = match value.to_ascii_lowercase().as_str() {
                    "both" => vec![Policy::Uniform, Policy::Adaptive],
                    other => vec![other.parse()?],
                }
            }
            "distribution" => {
                self.distribution = match value.to_ascii_lowercase().replace('-', "_").as_str() {
                    "exponential" => DistributionChoice::Builtin(BuiltinKind::Exponential),
                    "power_law" | "powerlaw" => DistributionChoice::Builtin(BuiltinKind::PowerLaw),
                    "file" | "embedding" => DistributionChoice::File,
                    other => return Err(Error::Config(format!("unknown distribution '{other}'"))),
                }
            }
            "similarity_file" => self.similarity_file = Some(PathBuf::from(value)),
            "mode" => self.mode = value.parse()?,
            "n_voters" => self.n_voters = parse(key, value)?,
            "sigma_min" => self.sigma_range.0 = parse(key, value)?,
            "sigma_max" => self.sigma_range.1 = parse(key, value)?,
            "eps_min" => self.eps_range.0 = parse(key, value)?,
            "eps_max" => self.eps_range.1 = parse(key, value)?,
            "replicates" => self.replicates = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "n0" => self.n0 = parse(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ProtocolParams> {
        ProtocolParams::new(self.n_items, self.m, self.alpha, self.n_ballots)
    }

    /// Checks every nested invariant; returns non-fatal warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        if self.replicates < 1 {
            return Err(Error::Config("replicates must be >= 1".into()));
        }
        if self.n_voters < 1 {
            return Err(Error::Config("n_voters must be >= 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policy selected".into()));
        }
        let params = self.params()?;
        params.ballot_sizes()?;
        let mut warnings = Vec::new();
        if self.policies.contains(&Policy::Adaptive) {
            for d in validate_params(&params) {
                if d.is_error() {
                    return Err(Error::InvalidParams(d.message));
                }
                warnings.push(d.message);
            }
        }
        for (what, (lo, hi), max) in [
            ("sigma*", self.sigma_range, f64::MAX),
            ("epsilon", self.eps_range, 1.0),
        ] {
            if !(lo >= 0.0 && lo <= hi && hi <= max) {
                return Err(Error::InvalidRange { what, lo, hi });
            }
        }
        if self.distribution == DistributionChoice::File && self.similarity_file.is_none() {
            return Err(Error::Config(
                "distribution = file requires similarity_file".into(),
            ));
        }
        Ok(warnings)
    }

    /// Builds the underlying similarity values. A loaded file must hold
    /// exactly `n_items` values.
    pub fn load_distribution(&self) -> Result<SimilarityDistribution> {
        match self.distribution {
            DistributionChoice::Builtin(kind) => {
                SimilarityDistribution::builtin(kind, self.n_items)
            }
            DistributionChoice::File => {
                let path = self
                    .similarity_file
                    .as_ref()
                    .ok_or_else(|| Error::Config("similarity_file not set".into()))?;
                let d = load_similarity_file(path)?;
                if d.len() != self.n_items {
                    return Err(Error::Config(format!(
                        "{} holds {} values but n_items = {}",
                        path.display(),
                        d.len(),
                        self.n_items
                    )));
                }
                Ok(d)
            }
        }
    }

    pub fn distribution_label(&self) -> String {
        match self.distribution {
            DistributionChoice::Builtin(kind) => kind.to_string(),
            DistributionChoice::File => "file".to_string(),
        }
    }
}
