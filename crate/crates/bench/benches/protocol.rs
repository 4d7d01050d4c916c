use adacomp_core::experiment::{replicate_seed, run_replicate, ReplicateSpec};
use adacomp_core::voter::{BuiltinKind, ComparisonMode, SimilarityDistribution};
use adacomp_core::{Policy, ProtocolParams};
use criterion::{criterion_group, criterion_main, Criterion};

fn replicate(c: &mut Criterion) {
    let params = ProtocolParams::new(990, 20, 0.5, 7).unwrap();
    let dist = SimilarityDistribution::builtin(BuiltinKind::Exponential, 990).unwrap();
    let mut group = c.benchmark_group("replicate_990");
    group.sample_size(20);
    for policy in [Policy::Uniform, Policy::Adaptive] {
        let spec = ReplicateSpec {
            params: &params,
            policy,
            distribution: &dist,
            mode: ComparisonMode::Relatedness,
            n_voters: 100,
            sigma_range: (0.02, 0.2),
            eps_range: (0.005, 0.05),
            n0: 2,
            keep_snapshot: false,
        };
        group.bench_function(policy.as_str(), |b| {
            b.iter(|| run_replicate(&spec, 0, replicate_seed(1, 0)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, replicate);
criterion_main!(benches);
