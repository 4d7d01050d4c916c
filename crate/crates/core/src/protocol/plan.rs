//! Comparison plans: which pairs are shown in a ballot and to whom.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub type ItemId = usize;
pub type VoterId = u32;

/// An unordered pair of distinct items, stored in presentation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    pub first: ItemId,
    pub second: ItemId,
}

impl Pair {
    pub fn new(first: ItemId, second: ItemId) -> Self {
        Self { first, second }
    }

    /// Order-independent key.
    pub fn key(&self) -> (ItemId, ItemId) {
        (self.first.min(self.second), self.first.max(self.second))
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.first == item || self.second == item
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonPlan {
    /// 1-based ballot number.
    pub ballot: usize,
    /// Items taking part in this ballot, ascending.
    pub items: Vec<ItemId>,
    pub pairs: Vec<Pair>,
    /// Voter assigned to each pair, parallel to `pairs`.
    pub voters: Vec<VoterId>,
}

impl ComparisonPlan {
    fn from_pairs(ballot: usize, mut items: Vec<ItemId>, pairs: Vec<Pair>) -> Self {
        items.sort_unstable();
        let voters = vec![0; pairs.len()];
        Self {
            ballot,
            items,
            pairs,
            voters,
        }
    }

    /// Assigns each pair to a voter drawn uniformly, with replacement, from
    /// `0..n_voters`.
    pub fn assign_voters<R: Rng + ?Sized>(&mut self, n_voters: usize, rng: &mut R) -> Result<()> {
        if n_voters == 0 {
            return Err(Error::InvalidParams("voter pool is empty".into()));
        }
        let n = VoterId::try_from(n_voters)
            .map_err(|_| Error::InvalidParams(format!("too many voters: {n_voters}")))?;
        for v in &mut self.voters {
            *v = rng.random_range(0..n);
        }
        Ok(())
    }

    /// Number of times `item` is shown in this plan.
    pub fn appearances(&self, item: ItemId) -> usize {
        self.pairs
            .iter()
            .map(|p| usize::from(p.first == item) + usize::from(p.second == item))
            .sum()
    }

    /// Appearance count of every planned item, parallel to `items`.
    pub fn appearance_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.items.len()];
        for p in &self.pairs {
            for id in [p.first, p.second] {
                if let Ok(slot) = self.items.binary_search(&id) {
                    counts[slot] += 1;
                }
            }
        }
        counts
    }
}

/// Pairs for one adaptive ballot: every item appears `m` times, except that a
/// single randomly chosen item appears `m + 1` times when `m · |items|` is odd.
pub fn generate_ballot_pairs<R: Rng + ?Sized>(
    items: &[ItemId],
    m: usize,
    ballot: usize,
    rng: &mut R,
) -> Result<ComparisonPlan> {
    if items.len() < 2 {
        return Err(Error::TooFewItems {
            min: 2,
            got: items.len(),
        });
    }
    if m < 1 {
        return Err(Error::InvalidParams("m must be >= 1".into()));
    }
    let mut slots: Vec<ItemId> = Vec::with_capacity(m * items.len() + 1);
    for &id in items {
        slots.extend(std::iter::repeat_n(id, m));
    }
    if slots.len() % 2 == 1 {
        slots.push(items[rng.random_range(0..items.len())]);
    }
    let pairs = pair_slots(slots, rng)?;
    Ok(ComparisonPlan::from_pairs(ballot, items.to_vec(), pairs))
}

/// A single batch of `n_comp` pairs with appearances balanced to
/// `floor(2 n_comp / N)` or one more.
pub fn generate_uniform_plan<R: Rng + ?Sized>(
    items: &[ItemId],
    n_comp: usize,
    rng: &mut R,
) -> Result<ComparisonPlan> {
    if items.len() < 2 {
        return Err(Error::TooFewItems {
            min: 2,
            got: items.len(),
        });
    }
    if n_comp < 1 {
        return Err(Error::InvalidParams("n_comp must be >= 1".into()));
    }
    let total = 2 * n_comp;
    let base = total / items.len();
    let extra = total % items.len();

    let mut bumped: Vec<ItemId> = items.to_vec();
    bumped.shuffle(rng);
    bumped.truncate(extra);

    let mut slots = Vec::with_capacity(total);
    for &id in items {
        slots.extend(std::iter::repeat_n(id, base));
    }
    slots.extend(bumped);
    let pairs = pair_slots(slots, rng)?;
    Ok(ComparisonPlan::from_pairs(1, items.to_vec(), pairs))
}

/// Shuffles an even-length appearance multiset into consecutive pairs, then
/// removes self-pairs by swapping with a pair that avoids the repeated item.
fn pair_slots<R: Rng + ?Sized>(mut slots: Vec<ItemId>, rng: &mut R) -> Result<Vec<Pair>> {
    debug_assert!(slots.len() % 2 == 0);
    slots.shuffle(rng);
    let mut pairs: Vec<Pair> = slots
        .chunks_exact(2)
        .map(|c| Pair::new(c[0], c[1]))
        .collect();

    let n = pairs.len();
    for i in 0..n {
        if pairs[i].first != pairs[i].second {
            continue;
        }
        let item = pairs[i].first;
        // scan from a random offset so repairs do not cluster at the front
        let start = rng.random_range(0..n);
        let partner = (0..n)
            .map(|s| (start + s) % n)
            .find(|&j| j != i && !pairs[j].contains(item));
        let Some(j) = partner else {
            return Err(Error::InvalidParams(format!(
                "cannot avoid pairing item {item} with itself"
            )));
        };
        // (x, x) + (p, q) -> (x, p) + (x, q)
        let p = pairs[j].first;
        pairs[i].second = p;
        pairs[j].first = item;
    }
    Ok(pairs)
}
