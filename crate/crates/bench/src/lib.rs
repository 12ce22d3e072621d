//! Criterion benchmarks for qgame-core; see `benches/`.
