// SPDX-License-Identifier: Apache-2.0

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ramsey_core::board::{BoardKind, BoardSpec, Component, Position};
use ramsey_core::graphkit::{build_pattern, contains_k2ts, contains_pattern, uncolored_key, PatternSpec};
use ramsey_core::solver::{solve_bounded, verify_p1_strategy, Budget, VerifyOptions};

fn graphs(c: &mut Criterion) {
    let g = build_pattern(&PatternSpec::k2ts(4, 3).unwrap()).unwrap();
    let h = build_pattern(&PatternSpec::k2ts(3, 2).unwrap()).unwrap();
    c.bench_function("canonical key K_{2,4}(3)", |b| b.iter(|| uncolored_key(black_box(&g))));
    c.bench_function("contains_k2ts t=3 s=2", |b| b.iter(|| contains_k2ts(black_box(&g), 3, 2)));
    c.bench_function("contains_pattern K_{2,3}(2)", |b| b.iter(|| contains_pattern(black_box(&g), &h)));
}

fn positions(c: &mut Criterion) {
    let moves: Vec<(Component, u32, u32)> =
        vec![(Component::First, 0, 1), (Component::First, 2, 3), (Component::First, 0, 4), (Component::Second, 0, 1)];
    let p = Position::replay(BoardSpec::finite(BoardKind::Double, 40), &moves).unwrap();
    c.bench_function("symmetric move classes", |b| b.iter(|| black_box(&p).symmetric_move_classes()));
}

fn search(c: &mut Criterion) {
    let c4 = PatternSpec::cycle(4).unwrap();
    let k6 = Position::new(BoardSpec::finite(BoardKind::Single, 6));
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("solve C4 on K6, budget 4", |b| {
        b.iter(|| solve_bounded(&k6, &c4, Budget::new(4).unwrap()).unwrap())
    });
    let board = BoardSpec::for_target(BoardKind::Single, &c4);
    group.bench_function("verify p1-cycle:4", |b| {
        b.iter(|| verify_p1_strategy("p1-cycle:4", &c4, board, VerifyOptions::new(Budget::new(6).unwrap())).unwrap())
    });
    group.finish();
}

criterion_group!(benches, graphs, positions, search);
criterion_main!(benches);
