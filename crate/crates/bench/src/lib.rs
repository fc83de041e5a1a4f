//! Criterion benchmarks for `permvol`; see `benches/`.
