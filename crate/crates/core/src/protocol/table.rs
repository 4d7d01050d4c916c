//! Per-item score history across ballots.

use crate::metrics::Ranking;
use crate::protocol::plan::ItemId;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallotRecord {
    pub ballot: usize,
    pub appearances: u32,
    pub wins: u32,
    pub ties: u32,
    pub x: f64,
    pub y: f64,
    pub ybar: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ItemHistory {
    pub records: Vec<BallotRecord>,
    /// Last ballot the item took part in before being dropped; `None` for
    /// items that reached the end of the protocol.
    pub eliminated_at: Option<usize>,
}

impl ItemHistory {
    pub fn last(&self) -> Option<&BallotRecord> {
        self.records.last()
    }

    pub fn final_ybar(&self) -> Option<f64> {
        self.last().map(|r| r.ybar)
    }

    pub fn total_appearances(&self) -> u32 {
        self.records.iter().map(|r| r.appearances).sum()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.y).collect()
    }
}

/// Fitted rescaling line for one ballot `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleFit {
    pub ballot: usize,
    pub slope: f64,
    pub intercept: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    /// Indexed by item id.
    pub items: Vec<ItemHistory>,
    pub fits: Vec<RescaleFit>,
    pub n_ballots: usize,
}

impl ScoreTable {
    pub fn new(n_items: usize, n_ballots: usize) -> Self {
        Self {
            items: vec![ItemHistory::default(); n_items],
            fits: Vec::new(),
            n_ballots,
        }
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    /// Items still present after the last ballot.
    pub fn survivors(&self) -> Vec<ItemId> {
        self.items
            .iter()
            .enumerate()
            .filter(|(_, h)| h.eliminated_at.is_none() && !h.records.is_empty())
            .map(|(id, _)| id)
            .collect()
    }

    pub fn final_scores(&self) -> Vec<f64> {
        self.items
            .iter()
            .map(|h| h.final_ybar().unwrap_or(f64::NEG_INFINITY))
            .collect()
    }

    pub fn fit(&self, ballot: usize) -> Option<&RescaleFit> {
        self.fits.iter().find(|f| f.ballot == ballot)
    }
}

/// Ranks every item by its last running average, descending. Exact ties go
/// to the item eliminated later, then to the smaller id, so the result has no
/// tied ranks.
pub fn final_ranking(table: &ScoreTable) -> Ranking {
    // survivors outlast every eliminated item
    let stage = |h: &ItemHistory| h.eliminated_at.unwrap_or(usize::MAX);
    let scores = table.final_scores();
    let mut order: Vec<ItemId> = (0..table.n_items()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then_with(|| stage(&table.items[b]).cmp(&stage(&table.items[a])))
            .then_with(|| a.cmp(&b))
    });
    let mut ranks = vec![0.0; table.n_items()];
    for (pos, &id) in order.iter().enumerate() {
        ranks[id] = (pos + 1) as f64;
    }
    Ranking::new(ranks).expect("positions form a permutation")
}
