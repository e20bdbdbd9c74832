//! Criterion benchmarks for hvlab; see `benches/`.
