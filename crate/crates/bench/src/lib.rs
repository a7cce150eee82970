//! Criterion benchmarks for the summation pipeline; see `benches/`.
