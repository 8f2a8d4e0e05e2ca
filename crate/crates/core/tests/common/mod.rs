// SPDX-License-Identifier: Apache-2.0

//! Shared oracles and fixtures for integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramsey_core::board::{BoardKind, Component, Player, Position};
use ramsey_core::graphkit::{build_pattern, PatternSpec, SmallGraph};
use ramsey_core::solver::Outcome;

/// Random graph on at most `max_n` vertices with a random edge density.
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: u32) -> SmallGraph {
    let n = rng.gen_range(1..=max_n);
    let density: f64 = rng.gen_range(0.1..0.9);
    let mut g = SmallGraph::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.insert(ramsey_core::graphkit::Edge::new(u, v));
            }
        }
    }
    g
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The three seven-edge graphs left after deleting two edges from
/// `K_{2,4}(1)`: cores x=0, y=1 and leaves z_i = 1+i.
pub fn family_fixtures() -> [SmallGraph; 3] {
    let g = |pairs: &[(u32, u32)]| SmallGraph::from_edges(pairs.iter().copied()).unwrap();
    [
        g(&[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (0, 5)]),
        g(&[(0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3)]),
        g(&[(0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3), (1, 4)]),
    ]
}

/// Plain minimax over concrete `K_n` (or two copies) with edge bitmasks and
/// no symmetry reduction. Values use the same bounded-horizon convention as
/// the reduced solver.
pub struct NaiveSolver {
    /// Edge index to (component, u, v).
    edges: Vec<(usize, u32, u32)>,
    /// Every copy of the target as an edge mask.
    copies: Vec<u64>,
    budget: u32,
    memo: HashMap<(u64, u64, u32), Outcome>,
}

fn permutations_into(k: usize, n: u32, prefix: &mut Vec<u32>, out: &mut dyn FnMut(&[u32])) {
    if prefix.len() == k {
        out(prefix);
        return;
    }
    for v in 0..n {
        if !prefix.contains(&v) {
            prefix.push(v);
            permutations_into(k, n, prefix, out);
            prefix.pop();
        }
    }
}

impl NaiveSolver {
    pub fn new(kind: BoardKind, n: u32, target: &PatternSpec, budget: u32) -> Self {
        let comps = if kind == BoardKind::Double { 2 } else { 1 };
        let mut edges = Vec::new();
        for c in 0..comps {
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((c, u, v));
                }
            }
        }
        assert!(edges.len() <= 64);
        let index = |c: usize, a: u32, b: u32| {
            let (u, v) = (a.min(b), a.max(b));
            edges.iter().position(|&e| e == (c, u, v)).unwrap()
        };
        let h = build_pattern(target).unwrap();
        let verts: Vec<u32> = h.vertices().into_iter().collect();
        let mut copies = BTreeSet::new();
        if verts.len() as u32 <= n {
            for c in 0..comps {
                permutations_into(verts.len(), n, &mut Vec::new(), &mut |img| {
                    let at = |x: u32| img[verts.iter().position(|&w| w == x).unwrap()];
                    let mask = h.edges().fold(0u64, |m, e| m | 1 << index(c, at(e.lo()), at(e.hi())));
                    copies.insert(mask);
                });
            }
        }
        NaiveSolver {
            edges,
            copies: copies.into_iter().collect(),
            budget,
            memo: HashMap::new(),
        }
    }

    /// Masks of a concrete position. Component numbering follows the
    /// position's own labels.
    pub fn masks(&self, p: &Position) -> (u64, u64) {
        let mut m = [0u64; 2];
        for pm in p.history() {
            let c = if pm.component == Component::First { 0 } else { 1 };
            let i = self.edges.iter().position(|&e| e == (c, pm.edge.lo(), pm.edge.hi())).unwrap();
            m[if pm.player == Player::P1 { 0 } else { 1 }] |= 1 << i;
        }
        (m[0], m[1])
    }

    fn wins(&self, mine: u64) -> bool {
        self.copies.iter().any(|&c| c & mine == c)
    }

    fn rank(o: &Outcome) -> (i32, i64) {
        match *o {
            Outcome::MoverWinsIn { k } => (2, -(k as i64)),
            Outcome::NoDecisionWithin { .. } => (1, 0),
            Outcome::OpponentWinsIn { k } => (0, k as i64),
        }
    }

    /// Value for the mover; `mine` belongs to the mover.
    fn value(&mut self, mine: u64, theirs: u64, plies: u32) -> Outcome {
        let nd = Outcome::NoDecisionWithin { budget: self.budget };
        if plies == 0 {
            return nd;
        }
        if let Some(o) = self.memo.get(&(mine, theirs, plies)) {
            return *o;
        }
        let mut best: Option<Outcome> = None;
        for i in 0..self.edges.len() {
            let bit = 1u64 << i;
            if (mine | theirs) & bit != 0 {
                continue;
            }
            let v = if self.wins(mine | bit) {
                Outcome::MoverWinsIn { k: 1 }
            } else {
                match self.value(theirs, mine | bit, plies - 1) {
                    Outcome::MoverWinsIn { k } => Outcome::OpponentWinsIn { k },
                    Outcome::OpponentWinsIn { k } => Outcome::MoverWinsIn { k: k + 1 },
                    Outcome::NoDecisionWithin { .. } => nd,
                }
            };
            if best.map_or(true, |b| Self::rank(&v) > Self::rank(&b)) {
                best = Some(v);
            }
        }
        let out = best.unwrap_or(nd);
        self.memo.insert((mine, theirs, plies), out);
        out
    }

    /// Value of `p` for its mover within the budget.
    pub fn solve(&mut self, p: &Position) -> Outcome {
        let (m1, m2) = self.masks(p);
        match p.mover() {
            Player::P1 => self.value(m1, m2, 2 * self.budget),
            Player::P2 => self.value(m2, m1, 2 * self.budget + 1),
        }
    }
}
