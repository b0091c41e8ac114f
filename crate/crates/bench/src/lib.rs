//! Criterion benchmarks for cryst-core live in `benches/`.
