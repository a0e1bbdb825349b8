//! Criterion benchmarks for sphemb-core; see `benches/`.
