//! Drives a full uniform or adaptive collection against a vote oracle.

use rand::Rng;

use crate::error::Result;
use crate::protocol::params::{Policy, ProtocolParams};
use crate::protocol::plan::{
    generate_ballot_pairs, generate_uniform_plan, ComparisonPlan, ItemId, VoterId,
};
use crate::protocol::scoring::{
    borda_scores, rescale_scores, select_survivors, update_running_average, VoteOutcome, VoteResult,
};
use crate::protocol::table::{BallotRecord, RescaleFit, ScoreTable};

/// Answers a single comparison. Implemented for any
/// `FnMut(first, second, voter) -> VoteResult`.
pub trait VoteOracle {
    fn vote(&mut self, first: ItemId, second: ItemId, voter: VoterId) -> VoteResult;
}

impl<F> VoteOracle for F
where
    F: FnMut(ItemId, ItemId, VoterId) -> VoteResult,
{
    fn vote(&mut self, first: ItemId, second: ItemId, voter: VoterId) -> VoteResult {
        self(first, second, voter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoggedVote {
    pub ballot: usize,
    pub outcome: VoteOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    pub table: ScoreTable,
    pub votes: Vec<LoggedVote>,
    pub warnings: Vec<String>,
}

impl ProtocolRun {
    pub fn n_comparisons(&self) -> usize {
        self.votes.len()
    }
}

fn collect_votes<O: VoteOracle + ?Sized>(
    plan: &ComparisonPlan,
    oracle: &mut O,
) -> Vec<VoteOutcome> {
    plan.pairs
        .iter()
        .zip(&plan.voters)
        .map(|(&pair, &voter)| VoteOutcome {
            pair,
            result: oracle.vote(pair.first, pair.second, voter),
            voter,
        })
        .collect()
}

/// Runs the whole collection. `rng` drives pair drawing, voter assignment
/// and survivor tie-breaks; any randomness inside the oracle is its own.
///
/// The uniform policy spends the same number of comparisons the adaptive
/// schedule of `params` would.
pub fn run_protocol<R, O>(
    params: &ProtocolParams,
    policy: Policy,
    n_voters: usize,
    oracle: &mut O,
    rng: &mut R,
) -> Result<ProtocolRun>
where
    R: Rng + ?Sized,
    O: VoteOracle + ?Sized,
{
    let sizes = params.ballot_sizes()?;
    let all_items: Vec<ItemId> = (0..params.n_items).collect();

    match policy {
        Policy::Uniform => {
            let n_comp = params.total_comparisons()?;
            let mut plan = generate_uniform_plan(&all_items, n_comp, rng)?;
            plan.assign_voters(n_voters, rng)?;
            let outcomes = collect_votes(&plan, oracle);
            let scores = borda_scores(&plan, &outcomes)?;

            let mut table = ScoreTable::new(params.n_items, 1);
            for s in scores {
                table.items[s.item].records.push(BallotRecord {
                    ballot: 1,
                    appearances: s.appearances,
                    wins: s.wins,
                    ties: s.ties,
                    x: s.x,
                    y: s.x,
                    ybar: s.x,
                });
            }
            let votes = outcomes
                .into_iter()
                .map(|outcome| LoggedVote { ballot: 1, outcome })
                .collect();
            Ok(ProtocolRun {
                table,
                votes,
                warnings: Vec::new(),
            })
        }
        Policy::Adaptive => {
            let mut table = ScoreTable::new(params.n_items, params.n_ballots);
            let mut votes = Vec::with_capacity(params.total_comparisons()?);
            let mut warnings = Vec::new();
            let mut live = all_items;

            for k in 1..=params.n_ballots {
                let mut plan = generate_ballot_pairs(&live, params.m_per_ballot, k, rng)?;
                plan.assign_voters(n_voters, rng)?;
                let outcomes = collect_votes(&plan, oracle);
                let scores = borda_scores(&plan, &outcomes)?;
                votes.extend(
                    outcomes
                        .into_iter()
                        .map(|outcome| LoggedVote { ballot: k, outcome }),
                );

                let x: Vec<f64> = scores.iter().map(|s| s.x).collect();
                let y = if k == 1 {
                    x.clone()
                } else {
                    let prev: Vec<f64> = scores
                        .iter()
                        .map(|s| {
                            table.items[s.item]
                                .final_ybar()
                                .expect("live items have history")
                        })
                        .collect();
                    let fit = rescale_scores(&x, &prev)?;
                    if fit.degenerate {
                        warnings.push(format!(
                            "ballot {k}: every item won all its comparisons; rescaling skipped"
                        ));
                    }
                    table.fits.push(RescaleFit {
                        ballot: k,
                        slope: fit.slope,
                        intercept: fit.intercept(),
                        degenerate: fit.degenerate,
                    });
                    fit.y
                };

                let mut ybar = Vec::with_capacity(scores.len());
                for (s, &yi) in scores.iter().zip(&y) {
                    let history = &mut table.items[s.item];
                    let mut ys = history.ys();
                    ys.push(yi);
                    let mean = update_running_average(&ys)?;
                    history.records.push(BallotRecord {
                        ballot: k,
                        appearances: s.appearances,
                        wins: s.wins,
                        ties: s.ties,
                        x: s.x,
                        y: yi,
                        ybar: mean,
                    });
                    ybar.push((s.item, mean));
                }

                if let Some(&next) = sizes.get(k) {
                    let survivors = select_survivors(&ybar, next, rng)?;
                    for &id in &live {
                        if survivors.binary_search(&id).is_err() {
                            table.items[id].eliminated_at = Some(k);
                        }
                    }
                    live = survivors;
                }
            }
            Ok(ProtocolRun {
                table,
                votes,
                warnings,
            })
        }
    }
}
