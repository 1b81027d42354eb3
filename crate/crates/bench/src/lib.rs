//! Benchmark harness for the cell-parametrization engines; see `benches/`.
