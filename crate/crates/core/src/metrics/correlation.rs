//! Weighted and classical Spearman/Kendall coefficients.
//!
//! The weighted forms are
//!
//! ```text
//! ρ_w = Σ_i w_i (a_i − ā)(b_i − b̄) / (σ_a σ_b)
//! τ_w = Σ_{i,j} w_i w_j sgn(a_j − a_i) sgn(b_j − b_i) / Z
//! ```
//!
//! with weighted means and deviations, and
//! `Z = sqrt(Σ_{a_i≠a_j} w_i w_j · Σ_{b_i≠b_j} w_i w_j)`, which is
//! `1 − Σ w_i²` for tie-free rankings.

use crate::error::{Error, Result};
use crate::metrics::{Ranking, WeightVector};

fn check_lengths(a: &Ranking, b: &Ranking, w: Option<&WeightVector>) -> Result<usize> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: b.len(),
        });
    }
    if let Some(w) = w {
        if w.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: w.len(),
            });
        }
    }
    if n < 2 {
        return Err(Error::TooFewItems { min: 2, got: n });
    }
    Ok(n)
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Weighted Spearman ρ_w.
pub fn weighted_spearman(a: &Ranking, b: &Ranking, w: &WeightVector) -> Result<f64> {
    check_lengths(a, b, Some(w))?;
    let (a, b, w) = (a.ranks(), b.ranks(), w.as_slice());

    let mean_a: f64 = w.iter().zip(a).map(|(w, x)| w * x).sum();
    let mean_b: f64 = w.iter().zip(b).map(|(w, x)| w * x).sum();
    let (mut cov, mut var_a, mut var_b) = (0.0, 0.0, 0.0);
    for i in 0..a.len() {
        let da = a[i] - mean_a;
        let db = b[i] - mean_b;
        cov += w[i] * da * db;
        var_a += w[i] * da * da;
        var_b += w[i] * db * db;
    }
    if !(var_a > 0.0) || !(var_b > 0.0) {
        return Err(Error::DegenerateRanking("zero weighted variance"));
    }
    Ok(clamp_unit(cov / (var_a.sqrt() * var_b.sqrt())))
}

/// Weight mass of ordered pairs `(i, j)` with distinct ranks:
/// `1 − Σ_groups (Σ_{i∈group} w_i)²`.
fn untied_pair_mass(ranks: &[f64], w: &[f64]) -> f64 {
    let mut order: Vec<usize> = (0..ranks.len()).collect();
    order.sort_by(|&i, &j| ranks[i].total_cmp(&ranks[j]));
    let total: f64 = w.iter().sum();
    let mut tied = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut group = w[order[start]];
        let mut end = start + 1;
        while end < order.len() && ranks[order[end]] == ranks[order[start]] {
            group += w[order[end]];
            end += 1;
        }
        tied += group * group;
        start = end;
    }
    total * total - tied
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Weighted Kendall τ_w.
pub fn weighted_kendall(a: &Ranking, b: &Ranking, w: &WeightVector) -> Result<f64> {
    let n = check_lengths(a, b, Some(w))?;
    let (a, b, w) = (a.ranks(), b.ranks(), w.as_slice());

    let z_a = untied_pair_mass(a, w);
    let z_b = untied_pair_mass(b, w);
    if !(z_a > 0.0) || !(z_b > 0.0) {
        return Err(Error::DegenerateRanking("all items tied"));
    }

    // The summand is symmetric in (i, j), so sum i < j and double.
    let mut half = 0.0;
    for i in 0..n {
        let mut row = 0.0;
        for j in (i + 1)..n {
            row += w[j] * sign(a[j] - a[i]) * sign(b[j] - b[i]);
        }
        half += w[i] * row;
    }
    Ok(clamp_unit(2.0 * half / (z_a * z_b).sqrt()))
}

/// Classical Spearman ρ: the Pearson correlation of the rank vectors.
pub fn spearman(a: &Ranking, b: &Ranking) -> Result<f64> {
    let n = check_lengths(a, b, None)? as f64;
    let (a, b) = (a.ranks(), b.ranks());
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in a.iter().zip(b) {
        sxy += (x - mean_a) * (y - mean_b);
        sxx += (x - mean_a).powi(2);
        syy += (y - mean_b).powi(2);
    }
    if !(sxx > 0.0) || !(syy > 0.0) {
        return Err(Error::DegenerateRanking("zero variance"));
    }
    Ok(clamp_unit(sxy / (sxx * syy).sqrt()))
}

/// Classical Kendall τ (the τ_b variant when ties are present).
pub fn kendall(a: &Ranking, b: &Ranking) -> Result<f64> {
    let n = check_lengths(a, b, None)?;
    let (a, b) = (a.ranks(), b.ranks());
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut untied_a, mut untied_b) = (0i64, 0i64);
    for i in 0..n {
        for j in (i + 1)..n {
            let sa = sign(a[j] - a[i]);
            let sb = sign(b[j] - b[i]);
            if sa != 0.0 {
                untied_a += 1;
            }
            if sb != 0.0 {
                untied_b += 1;
            }
            let s = sa * sb;
            if s > 0.0 {
                concordant += 1;
            } else if s < 0.0 {
                discordant += 1;
            }
        }
    }
    if untied_a == 0 || untied_b == 0 {
        return Err(Error::DegenerateRanking("all items tied"));
    }
    let denom = ((untied_a as f64) * (untied_b as f64)).sqrt();
    Ok(clamp_unit((concordant - discordant) as f64 / denom))
}

/// The four coefficients reported for an estimated ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub rho_w: f64,
    pub tau_w: f64,
    pub rho: f64,
    pub tau: f64,
}

impl Coefficients {
    pub const NAMES: [&'static str; 4] = ["rho_w", "tau_w", "rho", "tau"];

    pub fn as_array(&self) -> [f64; 4] {
        [self.rho_w, self.tau_w, self.rho, self.tau]
    }
}

/// Computes ρ_w, τ_w (additive hyperbolic weights with offset `n0`), ρ and τ.
pub fn compare(a: &Ranking, b: &Ranking, n0: u32) -> Result<Coefficients> {
    let w = crate::metrics::additive_weights(
        a,
        b,
        crate::metrics::WeightScheme::AdditiveHyperbolic { n0 },
    )?;
    Ok(Coefficients {
        rho_w: weighted_spearman(a, b, &w)?,
        tau_w: weighted_kendall(a, b, &w)?,
        rho: spearman(a, b)?,
        tau: kendall(a, b)?,
    })
}
