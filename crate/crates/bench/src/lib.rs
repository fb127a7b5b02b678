//! Criterion benchmarks for the acstark library; see `benches/`.
