//! Position weights for top-weighted rank correlation.

use crate::error::{Error, Result};
use crate::metrics::Ranking;

/// Offset used when none is given; rank 1 then holds about 28% of the weight.
pub const DEFAULT_N0: u32 = 2;

/// How per-position weights are derived from a pair of rankings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScheme {
    /// `w_i ∝ f(a_i) + f(b_i)` with `f(n) = 1 / (n + n0)²`.
    AdditiveHyperbolic { n0: u32 },
    /// Every item weighs `1 / N`; reduces the weighted coefficients to the
    /// classical ones.
    Uniform,
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme::AdditiveHyperbolic { n0: DEFAULT_N0 }
    }
}

/// Normalized, non-negative per-item weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
}

impl WeightVector {
    const SUM_TOLERANCE: f64 = 1e-12;

    /// Checks non-negativity and unit sum.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty".into()));
        }
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(format!(
                "weight {} at index {i} is negative or non-finite",
                weights[i]
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self { weights })
    }

    /// Scales arbitrary non-negative masses to unit sum.
    pub fn normalized(masses: Vec<f64>) -> Result<Self> {
        let total: f64 = masses.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::InvalidWeights(format!("total mass {total}")));
        }
        Self::new(masses.into_iter().map(|m| m / total).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// `f(n; n0) = 1 / (n + n0)²`.
///
/// `n` may be a fractional (tied) rank but must be at least 1.
pub fn hyperbolic_weight(n: f64, n0: u32) -> Result<f64> {
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::Domain(format!("rank must be >= 1, got {n}")));
    }
    let shifted = n + f64::from(n0);
    Ok(1.0 / (shifted * shifted))
}

/// Additive weights `w_i = (f(a_i) + f(b_i)) / Σ_j (f(a_j) + f(b_j))`.
pub fn additive_weights(a: &Ranking, b: &Ranking, scheme: WeightScheme) -> Result<WeightVector> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::TooFewItems {
            min: 2,
            got: a.len(),
        });
    }
    match scheme {
        WeightScheme::Uniform => Ok(WeightVector::uniform(a.len())),
        WeightScheme::AdditiveHyperbolic { n0 } => {
            let masses = a
                .ranks()
                .iter()
                .zip(b.ranks())
                .map(|(&ra, &rb)| Ok(hyperbolic_weight(ra, n0)? + hyperbolic_weight(rb, n0)?))
                .collect::<Result<Vec<_>>>()?;
            WeightVector::normalized(masses)
        }
    }
}
