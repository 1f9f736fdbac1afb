//! Criterion benchmarks for `altsum-core`; see `benches/`.
