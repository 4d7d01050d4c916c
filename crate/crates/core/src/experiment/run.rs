//! Seeded replicate runs and their summaries.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiment::config::ExperimentConfig;
use crate::metrics::{compare, Coefficients, Ranking};
use crate::protocol::{final_ranking, run_protocol, Policy, ProtocolParams, ProtocolRun};
use crate::voter::{
    sample_voter_pool, theoretical_ranking, ComparisonMode, SimilarityDistribution, SimulatedVoters,
};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `index`: one SplitMix64 step from
/// `base + index · γ`, γ being the 64-bit golden-ratio constant.
///
/// Each replicate can be re-run alone from its seed.
pub fn replicate_seed(base: u64, index: usize) -> u64 {
    splitmix64(base.wrapping_add((index as u64).wrapping_mul(GOLDEN_GAMMA)))
}

/// Independent random streams used within one replicate.
mod stream {
    pub const VOTERS: u64 = 0;
    pub const PROTOCOL: u64 = 1;
    pub const NOISE: u64 = 2;
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// State kept from a replicate for figure exports and precision analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub run: ProtocolRun,
    /// `assignment[item]` is the index of the item's value in the
    /// unshuffled distribution.
    pub assignment: Vec<usize>,
    /// Ground truth, indexed by item id.
    pub theoretical: Ranking,
    pub estimated: Ranking,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateResult {
    pub index: usize,
    pub seed: u64,
    pub coefficients: Coefficients,
    pub snapshot: Option<Snapshot>,
}

/// Inputs shared by every replicate of one policy.
#[derive(Debug, Clone, Copy)]
pub struct ReplicateSpec<'a> {
    pub params: &'a ProtocolParams,
    pub policy: Policy,
    pub distribution: &'a SimilarityDistribution,
    pub mode: ComparisonMode,
    pub n_voters: usize,
    pub sigma_range: (f64, f64),
    pub eps_range: (f64, f64),
    pub n0: u32,
    pub keep_snapshot: bool,
}

/// One simulated collection.
///
/// Draws a fresh voter pool and a random assignment of similarity values to
/// item ids, so item ids carry no information about the ground truth; then
/// runs the protocol and scores the final ranking against the theoretical
/// one.
pub fn run_replicate(spec: &ReplicateSpec<'_>, index: usize, seed: u64) -> Result<ReplicateResult> {
    let n = spec.params.n_items;
    if spec.distribution.len() != n {
        return Err(Error::Config(format!(
            "distribution has {} values for {n} items",
            spec.distribution.len()
        )));
    }

    let mut voter_rng = stream_rng(seed, stream::VOTERS);
    let voters = sample_voter_pool(
        spec.n_voters,
        spec.sigma_range,
        spec.eps_range,
        &mut voter_rng,
    )?;
    let mut assignment: Vec<usize> = (0..n).collect();
    assignment.shuffle(&mut voter_rng);
    let items = spec.distribution.permuted(&assignment);
    let theoretical = theoretical_ranking(&items, spec.mode)?;

    let mut oracle = SimulatedVoters {
        similarities: items.values(),
        voters: &voters,
        mode: spec.mode,
        rng: stream_rng(seed, stream::NOISE),
    };
    let mut protocol_rng = stream_rng(seed, stream::PROTOCOL);
    let run = run_protocol(
        spec.params,
        spec.policy,
        spec.n_voters,
        &mut oracle,
        &mut protocol_rng,
    )?;

    let estimated = final_ranking(&run.table);
    let coefficients = compare(&estimated, &theoretical, spec.n0)?;
    let snapshot = spec.keep_snapshot.then_some(Snapshot {
        run,
        assignment,
        theoretical,
        estimated,
    });
    Ok(ReplicateResult {
        index,
        seed,
        coefficients,
        snapshot,
    })
}

/// Mean and unbiased standard deviation of one coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSummary {
    pub name: &'static str,
    pub mean: f64,
    /// `None` with a single replicate.
    pub sd: Option<f64>,
}

pub fn mean_and_sd(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.len() > 1).then(|| {
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        (ss / (n - 1.0)).sqrt()
    });
    (mean, sd)
}

pub fn summarize(results: &[ReplicateResult]) -> Vec<CoefficientSummary> {
    Coefficients::NAMES
        .iter()
        .enumerate()
        .map(|(c, &name)| {
            let values: Vec<f64> = results
                .iter()
                .map(|r| r.coefficients.as_array()[c])
                .collect();
            let (mean, sd) = mean_and_sd(&values);
            CoefficientSummary { name, mean, sd }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyResults {
    pub policy: Policy,
    pub replicates: Vec<ReplicateResult>,
    pub summary: Vec<CoefficientSummary>,
}

impl PolicyResults {
    pub fn summary_of(&self, name: &str) -> Option<&CoefficientSummary> {
        self.summary.iter().find(|s| s.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResults {
    pub distribution: String,
    pub policies: Vec<PolicyResults>,
    pub warnings: Vec<String>,
}

impl ExperimentResults {
    pub fn policy(&self, policy: Policy) -> Option<&PolicyResults> {
        self.policies.iter().find(|p| p.policy == policy)
    }
}

/// Runs every configured policy over `cfg.replicates` seeded replicates.
///
/// Replicates run in parallel; results are kept in replicate order, so the
/// output depends only on the configuration and base seed. Both policies see
/// the same replicate seeds.
pub fn run_experiment(cfg: &ExperimentConfig, keep_snapshots: bool) -> Result<ExperimentResults> {
    let warnings = cfg.validate()?;
    let params = cfg.params()?;
    let distribution = cfg.load_distribution()?;

    let mut policies = Vec::with_capacity(cfg.policies.len());
    for &policy in &cfg.policies {
        let spec = ReplicateSpec {
            params: &params,
            policy,
            distribution: &distribution,
            mode: cfg.mode,
            n_voters: cfg.n_voters,
            sigma_range: cfg.sigma_range,
            eps_range: cfg.eps_range,
            n0: cfg.n0,
            keep_snapshot: keep_snapshots,
        };
        let replicates = (0..cfg.replicates)
            .into_par_iter()
            .map(|i| {
                let seed = replicate_seed(cfg.seed, i);
                run_replicate(&spec, i, seed).map_err(|e| Error::Replicate {
                    seed,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let summary = summarize(&replicates);
        policies.push(PolicyResults {
            policy,
            replicates,
            summary,
        });
    }
    Ok(ExperimentResults {
        distribution: cfg.distribution_label(),
        policies,
        warnings,
    })
}

/// Spread of an underlying item's final score across replicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ItemSpread {
    /// Index into the unshuffled distribution.
    pub source_index: usize,
    pub sd: f64,
    /// Fraction of replicates in which the item reached the last ballot.
    pub survival_rate: f64,
}

/// Per-item standard deviation of the final running average, following
/// each underlying item through its per-replicate id assignment.
pub fn score_spread(results: &[ReplicateResult]) -> Result<Vec<ItemSpread>> {
    let snapshots: Vec<&Snapshot> = results
        .iter()
        .map(|r| r.snapshot.as_ref())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Config("score spread needs snapshots".into()))?;
    if snapshots.len() < 2 {
        return Err(Error::Config(
            "score spread needs at least two replicates".into(),
        ));
    }
    let n = snapshots[0].assignment.len();
    let mut finals = vec![Vec::with_capacity(snapshots.len()); n];
    let mut survived = vec![0usize; n];
    for snap in &snapshots {
        let survivors = snap.run.table.survivors();
        for (item, &source) in snap.assignment.iter().enumerate() {
            let ybar = snap.run.table.items[item]
                .final_ybar()
                .ok_or_else(|| Error::Config(format!("item {item} was never scored")))?;
            finals[source].push(ybar);
            if survivors.binary_search(&item).is_ok() {
                survived[source] += 1;
            }
        }
    }
    Ok(finals
        .iter()
        .enumerate()
        .map(|(source_index, values)| ItemSpread {
            source_index,
            sd: mean_and_sd(values).1.expect("two or more replicates"),
            survival_rate: survived[source_index] as f64 / snapshots.len() as f64,
        })
        .collect())
}
