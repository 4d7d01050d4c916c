//! Rank vectors with average-rank tie handling.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Rank values indexed by item id; rank 1 is the most related item.
///
/// Tied items share the mean of the positions they span, so ranks may be
/// fractional, but they always sum to `n (n + 1) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    ranks: Vec<f64>,
}

impl Ranking {
    /// Wraps explicit rank values, checking that each lies in `[1, n]`.
    pub fn new(ranks: Vec<f64>) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(Error::EmptyScores);
        }
        for (index, &value) in ranks.iter().enumerate() {
            if !value.is_finite() || value < 1.0 || value > n as f64 {
                return Err(Error::InvalidRank {
                    index,
                    value,
                    len: n,
                });
            }
        }
        Ok(Self { ranks })
    }

    /// The ranking that places item `i` at position `i + 1`.
    pub fn identity(n: usize) -> Self {
        Self {
            ranks: (1..=n).map(|r| r as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[f64] {
        &self.ranks
    }

    pub fn rank(&self, item: usize) -> f64 {
        self.ranks[item]
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.ranks
    }

    /// True when no two items share a rank.
    pub fn is_tie_free(&self) -> bool {
        let mut sorted = self.ranks.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Converts scores into a [`Ranking`], giving rank 1 to the best score.
///
/// Equal scores receive the average of the positions they cover.
pub fn ranks_from_scores(scores: &[f64], higher_is_better: bool) -> Result<Ranking> {
    if scores.is_empty() {
        return Err(Error::EmptyScores);
    }
    if let Some(index) = scores.iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFiniteScore { index });
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    let cmp = |a: &usize, b: &usize| -> Ordering {
        let ord = scores[*a].total_cmp(&scores[*b]);
        if higher_is_better {
            ord.reverse()
        } else {
            ord
        }
    };
    order.sort_by(cmp);

    let mut ranks = vec![0.0; scores.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end share their mean
        let shared = (start + 1 + end) as f64 / 2.0;
        for &item in &order[start..end] {
            ranks[item] = shared;
        }
        start = end;
    }
    Ok(Ranking { ranks })
}
