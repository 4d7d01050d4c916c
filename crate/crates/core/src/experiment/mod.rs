//! Replicated simulation studies and their outputs.

mod config;
mod export;
mod run;

pub use config::{DistributionChoice, ExperimentConfig, CONFIG_KEYS};
pub use export::{export_figure_data, write_outputs, write_replicates_csv, write_summary_csv};
pub use run::{
    mean_and_sd, replicate_seed, run_experiment, run_replicate, score_spread, summarize,
    CoefficientSummary, ExperimentResults, ItemSpread, PolicyResults, ReplicateResult,
    ReplicateSpec, Snapshot,
};
