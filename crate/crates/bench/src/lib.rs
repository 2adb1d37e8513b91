//! Benchmarks for growth-core live in `benches/`.
