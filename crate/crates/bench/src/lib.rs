//! Benchmark-only crate; the targets live in `benches/kernels.rs` and run
//! under `cargo bench -p concave-bench`.
