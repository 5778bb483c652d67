//! Criterion benchmarks for the diffeo-core kernels live in `benches/`.
