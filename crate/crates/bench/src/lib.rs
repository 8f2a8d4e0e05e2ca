// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for the engine live in `benches/`.
