//! Benchmarks live in `benches/`; run them with `cargo bench -p levels-bench --bench core`.
