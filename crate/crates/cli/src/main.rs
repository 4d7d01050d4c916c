use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use adacomp_core::experiment::{run_experiment, write_outputs, ExperimentConfig};
use adacomp_core::io::read_ranking_csv;
use adacomp_core::metrics::{compare, DEFAULT_N0};
use adacomp_core::protocol::{estimate_cost, validate_params};
use adacomp_core::{Coefficients, ProtocolParams};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

/// Adaptive pairwise-comparison rankings: simulation, metrics and planning.
#[derive(Parser)]
#[command(name = "adacomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded simulation study and write summary and per-replicate CSVs.
    Simulate(SimulateArgs),
    /// Compare two ranking CSVs (columns item_id,rank).
    Metrics(MetricsArgs),
    /// Print the ballot schedule and diagnostics for protocol parameters.
    Plan(PlanArgs),
    /// Estimate annotation person-hours.
    Cost(CostArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Key-value config file; unset keys keep their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Base seed (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Number of replicates (overrides the config).
    #[arg(long)]
    replicates: Option<usize>,
    /// Any config key, e.g. `--set m=40 --set policy=adaptive`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct MetricsArgs {
    a: PathBuf,
    b: PathBuf,
    /// Offset of the hyperbolic weight 1/(n + n0)^2.
    #[arg(long, default_value_t = DEFAULT_N0)]
    n0: u32,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long, default_value_t = 990)]
    n_items: usize,
    /// Appearances per item per ballot.
    #[arg(long, default_value_t = 20)]
    m: usize,
    /// Fraction of items kept between ballots.
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    #[arg(long, default_value_t = 7)]
    ballots: usize,
}

impl PlanArgs {
    fn params(&self) -> Result<ProtocolParams> {
        Ok(ProtocolParams::new(
            self.n_items,
            self.m,
            self.alpha,
            self.ballots,
        )?)
    }
}

#[derive(Args)]
struct CostArgs {
    /// Mean time per comparison, in seconds.
    #[arg(long)]
    seconds: f64,
    /// Number of comparisons; computed from the plan flags when omitted.
    #[arg(long)]
    n_comp: Option<usize>,
    #[command(flatten)]
    plan: PlanArgs,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Metrics(args) => metrics(args),
        Command::Plan(args) => plan(args),
        Command::Cost(args) => cost(args),
    }
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_file(path)
            .with_context(|| format!("reading config {}", path.display()))?,
        None => ExperimentConfig::default(),
    };
    for kv in &args.overrides {
        let Some((key, value)) = kv.split_once('=') else {
            bail!("--set expects KEY=VALUE, got '{kv}'");
        };
        cfg.set(key.trim(), value.trim())?;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = args.out_dir {
        cfg.out_dir = dir;
    }
    if let Some(n) = args.replicates {
        cfg.replicates = n;
    }

    let results = run_experiment(&cfg, true)?;
    for w in &results.warnings {
        eprintln!("warning: {w}");
    }
    write_outputs(&results, &cfg.out_dir)
        .with_context(|| format!("writing results to {}", cfg.out_dir.display()))?;

    println!(
        "distribution={} replicates={} seed={}",
        results.distribution, cfg.replicates, cfg.seed
    );
    let header: String = Coefficients::NAMES
        .iter()
        .map(|n| format!("{n:>14}"))
        .collect();
    println!("{:<10}{header}", "policy");
    for p in &results.policies {
        let cells: Vec<String> = p
            .summary
            .iter()
            .map(|s| match s.sd {
                Some(sd) => format!("{:.3}±{:.3}", s.mean, sd),
                None => format!("{:.4}", s.mean),
            })
            .collect();
        println!(
            "{:<10}{}",
            p.policy.as_str(),
            cells.iter().map(|c| format!("{c:>14}")).collect::<String>()
        );
    }
    println!("wrote {}", cfg.out_dir.display());
    Ok(())
}

fn metrics(args: MetricsArgs) -> Result<()> {
    let read = |path: &PathBuf| -> Result<_> {
        let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        read_ranking_csv(f).with_context(|| format!("reading {}", path.display()))
    };
    let c = compare(&read(&args.a)?, &read(&args.b)?, args.n0)?;
    for (name, value) in Coefficients::NAMES.iter().zip(c.as_array()) {
        println!("{name}\t{value:.6}");
    }
    Ok(())
}

fn plan(args: PlanArgs) -> Result<()> {
    let p = args.params()?;
    let diagnostics = validate_params(&p);
    for d in &diagnostics {
        println!("{d}");
    }
    if diagnostics.iter().any(|d| d.is_error()) {
        bail!("invalid protocol parameters");
    }
    println!("ballot sizes: {:?}", p.ballot_sizes()?);
    println!("N_comp: {}", p.total_comparisons()?);
    println!("M_top: {}", p.top_rank_presentations());
    Ok(())
}

fn cost(args: CostArgs) -> Result<()> {
    let n_comp = match args.n_comp {
        Some(n) => n,
        None => args.plan.params()?.total_comparisons()?,
    };
    let hours = estimate_cost(args.seconds, n_comp)?;
    println!(
        "{hours:.2} person-hours for {n_comp} comparisons at {} s each",
        args.seconds
    );
    Ok(())
}
