//! Borda scores, cross-ballot rescaling, running averages and survivor selection.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::protocol::plan::{ComparisonPlan, ItemId, Pair, VoterId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VoteResult {
    FirstWins,
    SecondWins,
    Tie,
}

impl VoteResult {
    /// Single-letter code used in vote logs.
    pub fn code(&self) -> &'static str {
        match self {
            VoteResult::FirstWins => "A",
            VoteResult::SecondWins => "B",
            VoteResult::Tie => "T",
        }
    }
}

impl fmt::Display for VoteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for VoteResult {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(VoteResult::FirstWins),
            "B" | "b" => Ok(VoteResult::SecondWins),
            "T" | "t" => Ok(VoteResult::Tie),
            other => Err(Error::Config(format!("unknown vote result '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VoteOutcome {
    pub pair: Pair,
    pub result: VoteResult,
    pub voter: VoterId,
}

/// One item's tally within a single ballot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItemScore {
    pub item: ItemId,
    pub appearances: u32,
    pub wins: u32,
    pub ties: u32,
    /// `(wins + ties / 2) / appearances`.
    pub x: f64,
}

/// Score assigned to an item the plan never shows.
pub const UNSEEN_SCORE: f64 = 0.5;

/// Raw Borda scores for every item in `plan`, in `plan.items` order.
///
/// Each planned pair must receive exactly one vote, in any order.
pub fn borda_scores(plan: &ComparisonPlan, votes: &[VoteOutcome]) -> Result<Vec<ItemScore>> {
    let mut expected: HashMap<(ItemId, ItemId), i64> = HashMap::new();
    for p in &plan.pairs {
        *expected.entry(p.key()).or_default() += 1;
    }
    for v in votes {
        *expected.entry(v.pair.key()).or_default() -= 1;
    }
    let mut unmatched: Vec<String> = expected
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|((a, b), &c)| {
            if c > 0 {
                format!("({a},{b}) missing {c}")
            } else {
                format!("({a},{b}) extra {}", -c)
            }
        })
        .collect();
    if !unmatched.is_empty() {
        unmatched.sort();
        return Err(Error::VoteMismatch(unmatched.join(", ")));
    }

    let mut scores: Vec<ItemScore> = plan
        .items
        .iter()
        .map(|&item| ItemScore {
            item,
            appearances: 0,
            wins: 0,
            ties: 0,
            x: UNSEEN_SCORE,
        })
        .collect();
    let slot = |id: ItemId| -> Result<usize> {
        plan.items.binary_search(&id).map_err(|_| {
            Error::VoteMismatch(format!("item {id} is not part of ballot {}", plan.ballot))
        })
    };
    for v in votes {
        let a = slot(v.pair.first)?;
        let b = slot(v.pair.second)?;
        scores[a].appearances += 1;
        scores[b].appearances += 1;
        match v.result {
            VoteResult::FirstWins => scores[a].wins += 1,
            VoteResult::SecondWins => scores[b].wins += 1,
            VoteResult::Tie => {
                scores[a].ties += 1;
                scores[b].ties += 1;
            }
        }
    }
    for s in &mut scores {
        if s.appearances > 0 {
            s.x = (f64::from(s.wins) + 0.5 * f64::from(s.ties)) / f64::from(s.appearances);
        }
    }
    Ok(scores)
}

/// Affine map `y = 1 − b̂ + b̂ x` fitted for ballot `k ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rescaled {
    pub slope: f64,
    pub y: Vec<f64>,
    /// Every item scored 1, so the fit was underdetermined and `y = x`.
    pub degenerate: bool,
}

impl Rescaled {
    pub fn intercept(&self) -> f64 {
        1.0 - self.slope
    }
}

/// Maps this ballot's raw scores onto the scale of the previous running
/// averages with a least-squares line pinned at (1, 1):
///
/// `b̂ = Σ (1 − x_j)(1 − ȳ_j) / Σ (1 − x_j)²`.
pub fn rescale_scores(x: &[f64], ybar_prev: &[f64]) -> Result<Rescaled> {
    if x.len() != ybar_prev.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: ybar_prev.len(),
        });
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(ybar_prev) {
        num += (1.0 - xi) * (1.0 - yi);
        den += (1.0 - xi) * (1.0 - xi);
    }
    if den == 0.0 {
        return Ok(Rescaled {
            slope: 1.0,
            y: x.to_vec(),
            degenerate: true,
        });
    }
    let slope = num / den;
    let y = x.iter().map(|&xi| 1.0 - slope + slope * xi).collect();
    Ok(Rescaled {
        slope,
        y,
        degenerate: false,
    })
}

/// Arithmetic mean of an item's rescaled scores so far.
pub fn update_running_average(history: &[f64]) -> Result<f64> {
    if history.is_empty() {
        return Err(Error::Domain("empty score history".into()));
    }
    Ok(history.iter().sum::<f64>() / history.len() as f64)
}

/// The `count` items with the largest running average. Ties at the cutoff
/// are broken uniformly at random. Returned ids are ascending.
pub fn select_survivors<R: Rng + ?Sized>(
    ybar: &[(ItemId, f64)],
    count: usize,
    rng: &mut R,
) -> Result<Vec<ItemId>> {
    if count < 2 {
        return Err(Error::InvalidParams(format!(
            "survivor count must be >= 2, got {count}"
        )));
    }
    if count > ybar.len() {
        return Err(Error::InvalidParams(format!(
            "cannot select {count} survivors from {} items",
            ybar.len()
        )));
    }
    let mut order: Vec<(ItemId, f64)> = ybar.to_vec();
    order.shuffle(rng);
    // stable: equal scores keep their shuffled order
    order.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut chosen: Vec<ItemId> = order[..count].iter().map(|(id, _)| *id).collect();
    chosen.sort_unstable();
    Ok(chosen)
}
