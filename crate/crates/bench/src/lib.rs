//! Criterion benchmarks for tessellation and homology; see `benches/`.
