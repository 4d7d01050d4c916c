//! Protocol configuration, the ballot-size schedule, and parameter heuristics.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How comparisons are distributed over items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    /// One batch in which every item appears (almost) equally often.
    Uniform,
    /// Successive ballots narrowed to the current top-scoring items.
    Adaptive,
}

impl Policy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Policy::Uniform => "uniform",
            Policy::Adaptive => "adaptive",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(Policy::Uniform),
            "adaptive" => Ok(Policy::Adaptive),
            other => Err(Error::Config(format!("unknown policy '{other}'"))),
        }
    }
}

/// Adaptive-protocol configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolParams {
    pub n_items: usize,
    /// Appearances of each item within one ballot (`M`).
    pub m_per_ballot: usize,
    /// Fraction of items carried into the next ballot.
    pub alpha: f64,
    pub n_ballots: usize,
}

impl ProtocolParams {
    /// Checks the field-level invariants. Schedule feasibility is reported by
    /// [`validate_params`] and enforced by [`ProtocolParams::ballot_sizes`].
    pub fn new(n_items: usize, m_per_ballot: usize, alpha: f64, n_ballots: usize) -> Result<Self> {
        if n_items < 2 {
            return Err(Error::InvalidParams(format!(
                "n_items must be >= 2, got {n_items}"
            )));
        }
        if m_per_ballot < 1 {
            return Err(Error::InvalidParams("m must be >= 1".into()));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        if n_ballots < 1 {
            return Err(Error::InvalidParams("n_ballots must be >= 1".into()));
        }
        Ok(Self {
            n_items,
            m_per_ballot,
            alpha,
            n_ballots,
        })
    }

    /// Ballot sizes `s_1 = N`, `s_k = round(α s_{k−1})`, rounding half away
    /// from zero.
    pub fn ballot_sizes(&self) -> Result<Vec<usize>> {
        let sizes = raw_sizes(self);
        if let Some((k, &s)) = sizes.iter().enumerate().find(|(_, &s)| s < 2) {
            return Err(Error::InvalidParams(format!(
                "ballot {} would hold {s} items (sizes {sizes:?})",
                k + 1
            )));
        }
        Ok(sizes)
    }

    /// Exact number of comparisons, `Σ_k ceil(M s_k / 2)`.
    pub fn total_comparisons(&self) -> Result<usize> {
        Ok(self
            .ballot_sizes()?
            .iter()
            .map(|&s| (self.m_per_ballot * s).div_ceil(2))
            .sum())
    }

    /// Approximate comparison count `(1 − α^{n_b}) / (2(1 − α)) · M · N`,
    /// valid when few items survive to the last ballot.
    pub fn total_comparisons_closed_form(&self) -> f64 {
        let m = self.m_per_ballot as f64;
        let n = self.n_items as f64;
        if self.alpha == 1.0 {
            return self.n_ballots as f64 * m * n / 2.0;
        }
        (1.0 - self.alpha.powi(self.n_ballots as i32)) / (2.0 * (1.0 - self.alpha)) * m * n
    }

    /// Presentations of an item that survives every ballot, `M_top = n_b M`.
    pub fn top_rank_presentations(&self) -> usize {
        self.n_ballots * self.m_per_ballot
    }

    /// Smallest α that keeps two items in the last ballot, `(2/N)^{1/(n_b−1)}`.
    pub fn alpha_lower_bound(&self) -> Option<f64> {
        (self.n_ballots >= 2)
            .then(|| (2.0 / self.n_items as f64).powf(1.0 / (self.n_ballots - 1) as f64))
    }

    /// Largest α leaving at most 10% of items in the last ballot,
    /// `0.1^{1/(n_b−1)}`.
    pub fn alpha_upper_bound(&self) -> Option<f64> {
        (self.n_ballots >= 2).then(|| 0.1f64.powf(1.0 / (self.n_ballots - 1) as f64))
    }
}

fn raw_sizes(p: &ProtocolParams) -> Vec<usize> {
    let mut sizes = Vec::with_capacity(p.n_ballots);
    let mut current = p.n_items;
    for k in 0..p.n_ballots {
        if k > 0 {
            // f64::round rounds half away from zero
            current = (p.alpha * current as f64).round() as usize;
        }
        sizes.push(current);
    }
    sizes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            message: message.into(),
        }
    }

    fn warning(message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// Recommended-range checks for an adaptive run.
///
/// Errors: fewer than two ballots, or a ballot holding fewer than two items.
/// Warnings: more than ten ballots, more than 10% of items surviving to the
/// last ballot, or `M_top < 100`.
pub fn validate_params(p: &ProtocolParams) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if p.n_ballots < 2 {
        out.push(Diagnostic::error("n_b >= 2 required for adaptive"));
    }

    let sizes = raw_sizes(p);
    if let Some((k, &s)) = sizes.iter().enumerate().find(|(_, &s)| s < 2) {
        let bound = p
            .alpha_lower_bound()
            .map(|b| format!("; alpha must be at least ~{b:.4}"))
            .unwrap_or_default();
        out.push(Diagnostic::error(format!(
            "last ballot size < 2: ballot {} would hold {s} items (sizes {sizes:?}){bound}",
            k + 1
        )));
    }

    if p.n_ballots > 10 {
        out.push(Diagnostic::warning(format!(
            "n_b = {} exceeds the recommended maximum of 10",
            p.n_ballots
        )));
    }
    if let Some(upper) = p.alpha_upper_bound() {
        if p.alpha > upper {
            out.push(Diagnostic::warning(format!(
                "alpha = {} exceeds {upper:.4}: more than 10% of items reach the last ballot",
                p.alpha
            )));
        }
    }
    let m_top = p.top_rank_presentations();
    if m_top < 100 {
        out.push(Diagnostic::warning(format!(
            "M_top = {m_top} is below the recommended 100 presentations"
        )));
    }
    out
}

/// Person-hours for `n_comp` comparisons at `seconds_per_comparison` each.
pub fn estimate_cost(seconds_per_comparison: f64, n_comp: usize) -> Result<f64> {
    if !(seconds_per_comparison >= 0.0) || !seconds_per_comparison.is_finite() {
        return Err(Error::Domain(format!(
            "mean comparison time must be a finite non-negative number, got {seconds_per_comparison}"
        )));
    }
    Ok(seconds_per_comparison * n_comp as f64 / 3600.0)
}
