//! Benchmark-only crate; see `benches/quantization.rs`.
