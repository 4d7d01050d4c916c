//! Thurstonian voter model for simulated similarity and relatedness judgments.
//!
//! A voter with nonconformity `σ*` perceives an item of underlying
//! similarity `z` as `clamp(z + σ*(1 − z²) η, −1, 1)` with fresh standard
//! normal `η` on every presentation (its absolute value in relatedness
//! mode). The higher-perceived item wins, except that with oversight
//! probability `ε` the voter picks the other one.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{Error, Result};
use crate::metrics::{ranks_from_scores, Ranking};
use crate::protocol::{ItemId, VoteOracle, VoteResult, VoterId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoterParams {
    pub sigma_star: f64,
    pub epsilon: f64,
}

impl VoterParams {
    pub fn new(sigma_star: f64, epsilon: f64) -> Result<Self> {
        if !(sigma_star >= 0.0) || !sigma_star.is_finite() {
            return Err(Error::Domain(format!(
                "sigma* must be >= 0, got {sigma_star}"
            )));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::Domain(format!(
                "epsilon must lie in [0, 1], got {epsilon}"
            )));
        }
        Ok(Self {
            sigma_star,
            epsilon,
        })
    }

    /// Never noisy, never distracted.
    pub const NOISELESS: VoterParams = VoterParams {
        sigma_star: 0.0,
        epsilon: 0.0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonMode {
    /// Voters pick the more similar item; theoretical order follows `z`.
    Similarity,
    /// Voters pick the more related item; theoretical order follows `|z|`.
    Relatedness,
}

impl fmt::Display for ComparisonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComparisonMode::Similarity => "similarity",
            ComparisonMode::Relatedness => "relatedness",
        })
    }
}

impl FromStr for ComparisonMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "similarity" => Ok(ComparisonMode::Similarity),
            "relatedness" => Ok(ComparisonMode::Relatedness),
            other => Err(Error::Config(format!("unknown comparison mode '{other}'"))),
        }
    }
}

/// Closed-form underlying similarity profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinKind {
    /// `z_i = 2 exp(−i/N) − 1`
    Exponential,
    /// `z_i = 2 / (1 + sqrt(i/N)) − 1`
    PowerLaw,
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinKind::Exponential => "exponential",
            BuiltinKind::PowerLaw => "power_law",
        })
    }
}

/// Underlying similarity of item `i` (1-based) out of `n`.
pub fn builtin_similarity(kind: BuiltinKind, i: usize, n: usize) -> Result<f64> {
    if i < 1 || i > n {
        return Err(Error::Domain(format!("index {i} outside 1..={n}")));
    }
    let t = i as f64 / n as f64;
    Ok(match kind {
        BuiltinKind::Exponential => 2.0 * (-t).exp() - 1.0,
        BuiltinKind::PowerLaw => 2.0 / (1.0 + t.sqrt()) - 1.0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionKind {
    Builtin(BuiltinKind),
    /// Values read from a file; the string is the source path.
    File(String),
}

impl fmt::Display for DistributionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionKind::Builtin(k) => k.fmt(f),
            DistributionKind::File(_) => f.write_str("file"),
        }
    }
}

/// Underlying similarity values `z` in `[−1, 1]`, indexed by item id.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDistribution {
    pub kind: DistributionKind,
    values: Vec<f64>,
}

impl SimilarityDistribution {
    pub fn builtin(kind: BuiltinKind, n_items: usize) -> Result<Self> {
        if n_items < 1 {
            return Err(Error::TooFewItems { min: 1, got: 0 });
        }
        let values = (1..=n_items)
            .map(|i| builtin_similarity(kind, i, n_items))
            .collect::<Result<_>>()?;
        Ok(Self {
            kind: DistributionKind::Builtin(kind),
            values,
        })
    }

    pub fn from_values(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if let Some(i) = values.iter().position(|z| !(-1.0..=1.0).contains(z)) {
            return Err(Error::Domain(format!(
                "similarity {} at index {i} outside [-1, 1]",
                values[i]
            )));
        }
        Ok(Self {
            kind: DistributionKind::File(source.into()),
            values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The distribution with its values reordered so item `i` takes
    /// `values[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            kind: self.kind.clone(),
            values: perm.iter().map(|&p| self.values[p]).collect(),
        }
    }
}

/// Reads one similarity value per line; blank lines and lines starting with
/// `#` are skipped.
pub fn load_similarity_file(path: impl AsRef<Path>) -> Result<SimilarityDistribution> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        };
        // accept U+2212 as a minus sign
        let normalized = line.replace('\u{2212}', "-");
        let z: f64 = normalized
            .parse()
            .map_err(|_| parse_err(format!("not a number: '{line}'")))?;
        if !(-1.0..=1.0).contains(&z) {
            return Err(parse_err(format!("value {z} outside [-1, 1]")));
        }
        values.push(z);
    }
    if values.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "no values".into(),
        });
    }
    SimilarityDistribution::from_values(values, path.display().to_string())
}

/// Draws `n_voters` parameter sets uniformly from the closed ranges.
pub fn sample_voter_pool<R: Rng + ?Sized>(
    n_voters: usize,
    sigma_range: (f64, f64),
    epsilon_range: (f64, f64),
    rng: &mut R,
) -> Result<Vec<VoterParams>> {
    let check = |what: &'static str, (lo, hi): (f64, f64), max: f64| {
        if !(lo >= 0.0 && lo <= hi && hi <= max) {
            Err(Error::InvalidRange { what, lo, hi })
        } else {
            Ok(())
        }
    };
    check("sigma*", sigma_range, f64::MAX)?;
    check("epsilon", epsilon_range, 1.0)?;
    let sigma =
        Uniform::new_inclusive(sigma_range.0, sigma_range.1).map_err(|_| Error::InvalidRange {
            what: "sigma*",
            lo: sigma_range.0,
            hi: sigma_range.1,
        })?;
    let eps = Uniform::new_inclusive(epsilon_range.0, epsilon_range.1).map_err(|_| {
        Error::InvalidRange {
            what: "epsilon",
            lo: epsilon_range.0,
            hi: epsilon_range.1,
        }
    })?;
    Ok((0..n_voters)
        .map(|_| VoterParams {
            sigma_star: sigma.sample(rng),
            epsilon: eps.sample(rng),
        })
        .collect())
}

/// One noisy perception of an item with underlying similarity `z`.
///
/// Always consumes exactly one normal deviate.
pub fn perceive<R: Rng + ?Sized>(
    z: f64,
    voter: &VoterParams,
    mode: ComparisonMode,
    rng: &mut R,
) -> f64 {
    debug_assert!((-1.0..=1.0).contains(&z));
    let eta: f64 = StandardNormal.sample(rng);
    let amplitude = voter.sigma_star * (1.0 - z * z);
    let o = (z + amplitude * eta).clamp(-1.0, 1.0);
    match mode {
        ComparisonMode::Similarity => o,
        ComparisonMode::Relatedness => o.abs(),
    }
}

/// One simulated comparison between items of similarity `z_first` and
/// `z_second`.
pub fn vote<R: Rng + ?Sized>(
    z_first: f64,
    z_second: f64,
    voter: &VoterParams,
    mode: ComparisonMode,
    rng: &mut R,
) -> VoteResult {
    let o_first = perceive(z_first, voter, mode, rng);
    let o_second = perceive(z_second, voter, mode, rng);
    let oversight = rng.random::<f64>() < voter.epsilon;
    if o_first == o_second {
        return VoteResult::Tie;
    }
    match (o_first > o_second, oversight) {
        (true, false) | (false, true) => VoteResult::FirstWins,
        _ => VoteResult::SecondWins,
    }
}

/// Ground-truth ranking: by `z` (similarity) or `|z|` (relatedness),
/// descending, ties averaged.
pub fn theoretical_ranking(d: &SimilarityDistribution, mode: ComparisonMode) -> Result<Ranking> {
    let keys: Vec<f64> = match mode {
        ComparisonMode::Similarity => d.values().to_vec(),
        ComparisonMode::Relatedness => d.values().iter().map(|z| z.abs()).collect(),
    };
    ranks_from_scores(&keys, true)
}

/// A voter pool answering comparisons about items with known similarities.
pub struct SimulatedVoters<'a, R> {
    pub similarities: &'a [f64],
    pub voters: &'a [VoterParams],
    pub mode: ComparisonMode,
    pub rng: R,
}

impl<R: Rng> VoteOracle for SimulatedVoters<'_, R> {
    fn vote(&mut self, first: ItemId, second: ItemId, voter: VoterId) -> VoteResult {
        let params = &self.voters[voter as usize];
        vote(
            self.similarities[first],
            self.similarities[second],
            params,
            self.mode,
            &mut self.rng,
        )
    }
}
