//! Benchmark-only crate; see `benches/checks.rs`.
