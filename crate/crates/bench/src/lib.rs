//! Benchmarks for the charslope engine live in `benches/`.
