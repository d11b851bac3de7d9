//! Benchmark-only crate; see `benches/routing.rs`.
