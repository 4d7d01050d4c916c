//! Criterion benchmarks for `adacomp-core`; see `benches/`.
