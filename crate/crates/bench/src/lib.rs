//! Criterion benchmarks for the reeskit closure computations; see `benches/`.
