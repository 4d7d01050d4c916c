//! End-to-end acceptance checks. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line (plus indented details) even
//! without `--nocapture`; exits non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use adacomp_core::experiment::*;
use adacomp_core::metrics::*;
use adacomp_core::protocol::*;
use adacomp_core::voter::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

/// Outcome of one criterion: overall verdict plus detail lines.
struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.pass &= ok;
        self.details.push(format!(
            "[{}] {}",
            if ok { "ok" } else { "MISS" },
            what.into()
        ));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }
}

/// `|value − target| ≤ tol`, reported with all three numbers.
fn near(o: &mut Outcome, label: &str, value: f64, target: f64, tol: f64) -> bool {
    let ok = (value - target).abs() <= tol;
    let digits = (2.0 - tol.log10()).ceil().max(4.0) as usize;
    o.check(
        ok,
        format!("{label}: {value:.digits$} (target {target:.digits$} ± {tol:e})"),
    );
    ok
}

// ---------------------------------------------------------------- 1 & 2

/// Targets for one distribution row: (coefficient, policy, target, tol).
type Targets = &'static [(&'static str, Policy, f64, f64)];

const EXPONENTIAL: Targets = &[
    ("rho_w", Policy::Adaptive, 0.9452, 0.02),
    ("rho_w", Policy::Uniform, 0.778, 0.10),
    ("tau_w", Policy::Adaptive, 0.66, 0.20),
    ("tau_w", Policy::Uniform, -0.11, 0.25),
    ("rho", Policy::Uniform, 0.8097, 0.03),
    ("rho", Policy::Adaptive, 0.8015, 0.03),
    ("tau", Policy::Uniform, 0.6265, 0.03),
    ("tau", Policy::Adaptive, 0.6330, 0.03),
];

const POWER_LAW: Targets = &[
    ("rho_w", Policy::Adaptive, 0.9800, 0.02),
    ("rho_w", Policy::Uniform, 0.800, 0.10),
    ("tau_w", Policy::Adaptive, 0.63, 0.20),
    ("rho", Policy::Uniform, 0.9713, 0.02),
    ("rho", Policy::Adaptive, 0.9632, 0.02),
    ("tau", Policy::Uniform, 0.8491, 0.02),
    ("tau", Policy::Adaptive, 0.8406, 0.02),
];

fn table_row(kind: BuiltinKind, targets: Targets, extra_sd_bound: Option<f64>) -> Outcome {
    let mut o = Outcome::new();
    let mut matched = Vec::new();
    for m in [20, 40] {
        let cfg = ExperimentConfig {
            distribution: DistributionChoice::Builtin(kind),
            m,
            ..Default::default()
        };
        let start = Instant::now();
        let res = run_experiment(&cfg, false).expect("experiment runs");
        let mut sub = Outcome::new();
        for &(coef, policy, target, tol) in targets {
            let s = res.policy(policy).unwrap().summary_of(coef).unwrap();
            near(&mut sub, &format!("{policy} {coef}"), s.mean, target, tol);
        }
        if let Some(bound) = extra_sd_bound {
            let sd = res
                .policy(Policy::Adaptive)
                .unwrap()
                .summary_of("rho_w")
                .unwrap()
                .sd
                .unwrap();
            sub.check(
                sd <= bound,
                format!("adaptive rho_w sd: {sd:.4} (≤ {bound})"),
            );
        }
        o.note(format!(
            "M={m} ({} comparisons, {:.1}s): {}",
            cfg.params().unwrap().total_comparisons().unwrap(),
            start.elapsed().as_secs_f64(),
            if sub.pass {
                "all tolerances met"
            } else {
                "outside tolerance"
            }
        ));
        o.details
            .extend(sub.details.into_iter().map(|d| format!("  {d}")));
        if sub.pass {
            matched.push(m);
        }
    }
    o.pass = !matched.is_empty();
    o.note(match matched.first() {
        Some(m) => format!("matching configuration: M={m}"),
        None => "no configuration meets all tolerances".to_string(),
    });
    o
}

fn criterion_1() -> Outcome {
    table_row(BuiltinKind::Exponential, EXPONENTIAL, Some(0.01))
}

fn criterion_2() -> Outcome {
    table_row(BuiltinKind::PowerLaw, POWER_LAW, None)
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sampled_cosines.txt");
    common::write_similarity_file(&path, &common::sampled_cosines(990, 50, 2024));
    let loaded = load_similarity_file(&path).unwrap();
    let v = loaded.values();
    o.note(format!(
        "sampled cosines: n={} min={:.3} max={:.3} mean={:.3}",
        v.len(),
        v.iter().cloned().fold(f64::INFINITY, f64::min),
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        v.iter().sum::<f64>() / v.len() as f64
    ));

    let cfg = ExperimentConfig {
        distribution: DistributionChoice::File,
        similarity_file: Some(path),
        ..Default::default()
    };
    let res = run_experiment(&cfg, false).unwrap();
    let mean = |p: Policy, c: &str| res.policy(p).unwrap().summary_of(c).unwrap().mean;
    for (coef, margin) in [("rho_w", 0.1), ("tau_w", 0.5)] {
        let (a, u) = (mean(Policy::Adaptive, coef), mean(Policy::Uniform, coef));
        o.check(
            a - u >= margin,
            format!(
                "{coef}: adaptive {a:.4} − uniform {u:.4} = {:.4} (≥ {margin})",
                a - u
            ),
        );
    }
    o
}

// ---------------------------------------------------------------- 4

fn random_ranking(n: usize, ties: bool, rng: &mut ChaCha8Rng) -> Vec<f64> {
    if ties {
        let scores: Vec<f64> = (0..n).map(|_| rng.random_range(0..4) as f64).collect();
        ranks_from_scores(&scores, true).unwrap().into_inner()
    } else {
        let mut r: Vec<f64> = (1..=n).map(|i| i as f64).collect();
        r.shuffle(rng);
        r
    }
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut worst_oracle, mut worst_reduction) = (0.0f64, 0.0f64);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.random_range(2..=8);
        let ties = checked % 4 == 3;
        let a = random_ranking(n, ties, &mut rng);
        let b = random_ranking(n, ties, &mut rng);
        if a.iter().all(|&x| x == a[0]) || b.iter().all(|&x| x == b[0]) {
            continue;
        }
        checked += 1;
        let (ra, rb) = (
            Ranking::new(a.clone()).unwrap(),
            Ranking::new(b.clone()).unwrap(),
        );
        let n0 = rng.random_range(0..5);
        let w = additive_weights(&ra, &rb, WeightScheme::AdditiveHyperbolic { n0 }).unwrap();
        let ws = w.as_slice();
        worst_oracle = worst_oracle
            .max(
                (weighted_spearman(&ra, &rb, &w).unwrap() - common::brute_spearman(&a, &b, ws))
                    .abs(),
            )
            .max(
                (weighted_kendall(&ra, &rb, &w).unwrap() - common::brute_kendall(&a, &b, ws)).abs(),
            );

        let u = WeightVector::uniform(n);
        worst_reduction = worst_reduction
            .max((weighted_spearman(&ra, &rb, &u).unwrap() - spearman(&ra, &rb).unwrap()).abs())
            .max((weighted_kendall(&ra, &rb, &u).unwrap() - kendall(&ra, &rb).unwrap()).abs());
    }
    o.check(
        worst_oracle <= 1e-10,
        format!("1000 pairs, max |weighted − double sum| = {worst_oracle:.2e} (≤ 1e-10)"),
    );
    o.check(
        worst_reduction <= 1e-12,
        format!("uniform weights, max |weighted − classical| = {worst_reduction:.2e} (≤ 1e-12)"),
    );
    o
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let six_over_pi2 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    near(
        &mut o,
        "R(0) vs 6/π²",
        first_rank_share(0),
        six_over_pi2,
        1e-9,
    );
    let r2 = 1.0 / (9.0 * trigamma(3.0).unwrap());
    near(&mut o, "R(2) vs 1/(9ψ1(3))", first_rank_share(2), r2, 1e-9);
    // ψ1(3) = π²/6 − 1 − 1/4, independently of the series.
    let r2_closed = 1.0 / (9.0 * (std::f64::consts::PI.powi(2) / 6.0 - 1.25));
    near(
        &mut o,
        "R(2) vs closed form",
        first_rank_share(2),
        r2_closed,
        1e-9,
    );
    near(
        &mut o,
        "R(0) vs reported ~0.61",
        first_rank_share(0),
        0.61,
        0.005,
    );
    near(
        &mut o,
        "R(2) vs reported ~0.28",
        first_rank_share(2),
        0.28,
        0.005,
    );
    o
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let p = ProtocolParams::new(990, 20, 0.5, 7).unwrap();
    let sizes = p.ballot_sizes().unwrap();
    o.check(
        sizes == [990, 495, 248, 124, 62, 31, 16],
        format!("ballot sizes {sizes:?}"),
    );
    let n_comp = p.total_comparisons().unwrap();
    o.check(n_comp == 19660, format!("N_comp = {n_comp} (19660)"));
    let m_top = p.top_rank_presentations();
    o.check(m_top == 140, format!("M_top = {m_top} (140)"));

    let mut violations = 0;
    let mut shapes = ChaCha8Rng::seed_from_u64(6);
    for seed in 0..1000u64 {
        let n = shapes.random_range(2..=990);
        let m = shapes.random_range(1..=40);
        let items: Vec<ItemId> = (0..n).collect();
        let plan =
            generate_ballot_pairs(&items, m, 1, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut counts: HashMap<ItemId, usize> = HashMap::new();
        for pair in &plan.pairs {
            *counts.entry(pair.first).or_default() += 1;
            *counts.entry(pair.second).or_default() += 1;
        }
        let over = counts.values().filter(|&&c| c == m + 1).count();
        let exact = counts.values().filter(|&&c| c == m).count();
        let expected_over = (n * m) % 2;
        let ok = plan.pairs.iter().all(|p| p.first != p.second)
            && counts.len() == n
            && over == expected_over
            && exact == n - expected_over
            && plan.pairs.len() == (n * m).div_ceil(2);
        violations += usize::from(!ok);
    }
    o.check(
        violations == 0,
        format!("appearance multiset: {violations}/1000 plans violate"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let (mut min_slope, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=60);
        let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let prev: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let r = rescale_scores(&x, &prev).unwrap();
        min_slope = min_slope.min(r.slope);
        max_y = r.y.iter().cloned().fold(max_y, f64::max);
    }
    o.check(
        min_slope >= 0.0 && max_y <= 1.0,
        format!("10^4 rescales: min b̂ = {min_slope:.4}, max y = {max_y:.6}"),
    );
    o
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();

    // Boundary exactness.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let wild = VoterParams::new(10.0, 0.0).unwrap();
    let mut exact = true;
    for _ in 0..100_000 {
        exact &= perceive(1.0, &wild, ComparisonMode::Similarity, &mut rng) == 1.0;
        exact &= perceive(-1.0, &wild, ComparisonMode::Similarity, &mut rng) == -1.0;
        exact &= perceive(-1.0, &wild, ComparisonMode::Relatedness, &mut rng) == 1.0;
    }
    o.check(exact, "perceive(±1) exact for σ* = 10 over 10^5 draws");

    // |o| = 1 at z = 0 needs |η| ≥ 1/σ* = 5.
    let analytic = 2.0 * Normal::standard().cdf(-5.0);
    o.check(
        analytic <= 1e-5,
        format!("analytic P(|o|=1 | z=0, σ*=0.2) = 2Φ(−5) = {analytic:.4e} (≤ 1e-5)"),
    );
    let draws = 100_000_000u64;
    let voter = VoterParams::new(0.2, 0.0).unwrap();
    let hits = {
        use rayon::prelude::*;
        (0..100u64)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(700 + chunk);
                (0..draws / 100)
                    .filter(|_| perceive(0.0, &voter, ComparisonMode::Relatedness, &mut rng) == 1.0)
                    .count() as u64
            })
            .sum::<u64>()
    };
    let rate = hits as f64 / draws as f64;
    o.check(
        rate <= 1e-5,
        format!("Monte Carlo over 10^8 draws: {hits} hits, rate {rate:.3e} (≤ 1e-5)"),
    );

    // Noiseless voters: every vote follows the ground truth, and runs repeat.
    let params = ProtocolParams::new(990, 20, 0.5, 7).unwrap();
    let dist = SimilarityDistribution::builtin(BuiltinKind::Exponential, 990).unwrap();
    let spec = ReplicateSpec {
        params: &params,
        policy: Policy::Adaptive,
        distribution: &dist,
        mode: ComparisonMode::Relatedness,
        n_voters: 100,
        sigma_range: (0.0, 0.0),
        eps_range: (0.0, 0.0),
        n0: DEFAULT_N0,
        keep_snapshot: true,
    };
    let a = run_replicate(&spec, 0, 99).unwrap();
    let b = run_replicate(&spec, 0, 99).unwrap();
    let snap = a.snapshot.as_ref().unwrap();
    let z = dist.permuted(&snap.assignment);
    let faithful = snap.run.votes.iter().all(|v| {
        let (za, zb) = (
            z.values()[v.outcome.pair.first].abs(),
            z.values()[v.outcome.pair.second].abs(),
        );
        v.outcome.result
            == match za.partial_cmp(&zb).unwrap() {
                std::cmp::Ordering::Greater => VoteResult::FirstWins,
                std::cmp::Ordering::Less => VoteResult::SecondWins,
                std::cmp::Ordering::Equal => VoteResult::Tie,
            }
    });
    o.check(
        faithful && a == b,
        format!(
            "noiseless voters: {} votes all follow |z|, replicate repeats exactly",
            snap.run.votes.len()
        ),
    );

    // Top-rank precision: items that usually survive to the last ballot
    // have less spread in their final score than the typical item.
    let cfg = ExperimentConfig {
        policies: vec![Policy::Adaptive],
        ..Default::default()
    };
    let res = run_experiment(&cfg, true).unwrap();
    let spread = score_spread(&res.policies[0].replicates).unwrap();
    let mut all: Vec<f64> = spread.iter().map(|s| s.sd).collect();
    all.sort_by(f64::total_cmp);
    let median = (all[(all.len() - 1) / 2] + all[all.len() / 2]) / 2.0;
    let survivors: Vec<f64> = spread
        .iter()
        .filter(|s| s.survival_rate >= 0.5)
        .map(|s| s.sd)
        .collect();
    let survivor_sd = survivors.iter().sum::<f64>() / survivors.len() as f64;
    o.check(
        !survivors.is_empty() && survivor_sd < median,
        format!(
            "50 replicates: mean ȳ SD of {} frequent survivors {survivor_sd:.4} < all-item median {median:.4}",
            survivors.len()
        ),
    );
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("exponential row reproduction", criterion_1),
        ("power-law row reproduction", criterion_2),
        ("file-loaded distribution ordering", criterion_3),
        ("metrics oracle suite", criterion_4),
        ("first-rank share", criterion_5),
        ("protocol invariants", criterion_6),
        ("voter model checks", criterion_7),
    ];
    // `cargo test -- <filter>` style selection by criterion number.
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        println!(
            "{} criterion {id}: {name} ({:.1}s)",
            if outcome.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for d in &outcome.details {
            println!("    {d}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
