//! Criterion benchmarks for the urnlab solvers and simulator live in `benches/`.
