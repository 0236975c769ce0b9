//! Criterion benchmarks for `leeyang`; see `benches/pipeline.rs`.
