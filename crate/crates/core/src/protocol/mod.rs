//! Uniform and adaptive pairwise-comparison collection.

mod params;
mod plan;
mod runner;
mod scoring;
mod table;

pub use params::{estimate_cost, validate_params, Diagnostic, Policy, ProtocolParams, Severity};
pub use plan::{
    generate_ballot_pairs, generate_uniform_plan, ComparisonPlan, ItemId, Pair, VoterId,
};
pub use runner::{run_protocol, LoggedVote, ProtocolRun, VoteOracle};
pub use scoring::{
    borda_scores, rescale_scores, select_survivors, update_running_average, ItemScore, Rescaled,
    VoteOutcome, VoteResult, UNSEEN_SCORE,
};
pub use table::{final_ranking, BallotRecord, ItemHistory, RescaleFit, ScoreTable};
