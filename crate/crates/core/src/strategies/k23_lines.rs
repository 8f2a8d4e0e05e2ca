// SPDX-License-Identifier: Apache-2.0

//! Fast `K_{2,3}` threat detection and forced-line checks used by the
//! double-clique P1 strategy.

use crate::board::{Component, Move, Player, Position};
use crate::graphkit::{Edge, Vertex};

type Mask = u128;

fn masks(p: &Position, c: Component, player: Player) -> Vec<Mask> {
    let n = p.materialized(c) as usize;
    assert!(n <= Mask::BITS as usize, "component too large for bitmask threats");
    let mut adj = vec![0 as Mask; n];
    for e in p.graph(c, player).edges() {
        let (u, v) = (e.lo() as usize, e.hi() as usize);
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Adding `uv` to `adj` creates a `K_{2,3}`: the new edge joins a core to a
/// leaf, so some `q` adjacent to one endpoint already shares two neighbours
/// with the other endpoint.
fn completes(adj: &[Mask], u: usize, v: usize) -> bool {
    let side = |a: usize, b: usize| {
        let mut qs = adj[b] & !(1 << a);
        while qs != 0 {
            let q = qs.trailing_zeros() as usize;
            qs &= qs - 1;
            if (adj[a] & adj[q] & !(1 << b)).count_ones() >= 2 {
                return true;
            }
        }
        false
    };
    side(u, v) || side(v, u)
}

/// Every unclaimed edge that would give `player` a `K_{2,3}`. Fresh vertices
/// never complete one, so only materialized pairs are scanned.
pub(crate) fn winning_edges(p: &Position, player: Player) -> Vec<(Component, Edge)> {
    let mut out = Vec::new();
    for &c in p.board().components() {
        let mine = masks(p, c, player);
        let theirs = masks(p, c, player.opponent());
        let n = mine.len();
        // both endpoints need an edge of `player` already
        for u in (0..n).filter(|&u| mine[u] != 0) {
            for v in (u + 1..n).filter(|&v| mine[v] != 0) {
                if (mine[u] | theirs[u]) >> v & 1 == 1 {
                    continue;
                }
                if completes(&mine, u, v) {
                    out.push((c, Edge::new(u as Vertex, v as Vertex)));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub(crate) fn edge_move(p: &Position, c: Component, e: Edge) -> Move {
    p.move_for_edge(c, e.lo(), e.hi()).expect("edge between used vertices")
}

/// Endpoint of a scripted move: a known vertex or the `i`-th new vertex of
/// the script.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Slot {
    V(Vertex),
    New(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Step {
    pub component: Component,
    pub a: Slot,
    pub b: Slot,
}

/// A script in progress with its new vertices materialized so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Line {
    pub name: &'static str,
    pub steps: Vec<Step>,
    pub news: Vec<Vertex>,
    pub next: usize,
}

impl Line {
    pub fn new(name: &'static str, steps: Vec<Step>) -> Self {
        Line {
            name,
            steps,
            news: Vec::new(),
            next: 0,
        }
    }

    /// Concrete move for the next step and the new-vertex table after it.
    fn resolve(&self, p: &Position) -> Option<(Move, Vec<Vertex>)> {
        let step = self.steps.get(self.next)?;
        let c = step.component;
        let mut news = self.news.clone();
        let mut fresh = p.materialized(c);
        let mut vertex = |s: Slot| match s {
            Slot::V(v) => v,
            Slot::New(i) if i < news.len() => news[i],
            Slot::New(i) => {
                debug_assert_eq!(i, news.len(), "new vertices are introduced in order");
                news.push(fresh);
                fresh += 1;
                fresh - 1
            }
        };
        let (u, v) = (vertex(step.a), vertex(step.b));
        if u == v {
            return None;
        }
        let mv = p.move_for_edge(c, u, v).ok()?;
        p.resolve(&mv).ok()?;
        Some((mv, news))
    }

    pub fn next_move(&mut self, p: &Position) -> Option<Move> {
        let (mv, news) = self.resolve(p)?;
        self.news = news;
        self.next += 1;
        Some(mv)
    }

    /// Plays the rest of the script against forced blocks. True iff P1 is
    /// guaranteed a win: every step is a threat P2 must answer on a single
    /// edge, P2 never gets a threat of its own, and the line ends in a win
    /// or a double threat.
    pub fn forces_win(&self, p: &Position) -> bool {
        let mut line = self.clone();
        let mut q = p.clone();
        loop {
            if !winning_edges(&q, Player::P1).is_empty() {
                return true;
            }
            if !winning_edges(&q, Player::P2).is_empty() {
                return false;
            }
            let Some(mv) = line.next_move(&q) else { return false };
            q = q.apply_move(&mv).expect("resolved move applies");
            if !winning_edges(&q, Player::P2).is_empty() {
                return false;
            }
            let threats = winning_edges(&q, Player::P1);
            match threats[..] {
                [] => return false,
                [(c, e)] => q = q.apply_move(&edge_move(&q, c, e)).expect("block applies"),
                _ => return true,
            }
        }
    }
}

/// Four-cycles `s0 s1 s2 s3` of `player` in component `c`, each listed once
/// per rotation and direction.
pub(crate) fn oriented_c4s(p: &Position, c: Component, player: Player) -> Vec<[Vertex; 4]> {
    let adj = masks(p, c, player);
    let n = adj.len();
    let mut out = Vec::new();
    for s0 in 0..n {
        let mut n1 = adj[s0];
        while n1 != 0 {
            let s1 = n1.trailing_zeros() as usize;
            n1 &= n1 - 1;
            let mut n2 = adj[s1] & !(1 << s0);
            while n2 != 0 {
                let s2 = n2.trailing_zeros() as usize;
                n2 &= n2 - 1;
                let mut n3 = adj[s2] & adj[s0] & !(1 << s1);
                while n3 != 0 {
                    let s3 = n3.trailing_zeros() as usize;
                    n3 &= n3 - 1;
                    out.push([s0, s1, s2, s3].map(|v| v as Vertex));
                }
            }
        }
    }
    out
}

/// Whether `v` lies on a four-cycle of `player`.
#[cfg(test)]
pub(crate) fn on_c4(p: &Position, c: Component, player: Player, v: Vertex) -> bool {
    oriented_c4s(p, c, player).iter().any(|cyc| cyc[0] == v)
}

fn step(c: Component, a: Slot, b: Slot) -> Step {
    Step { component: c, a, b }
}

/// Lines of the form: C4 `a x b y` with pendant `a c`; three new leaves at
/// `y`, then `c` joins the first of them.
pub(crate) fn pendant_lines(p: &Position) -> Vec<Line> {
    let mut out = Vec::new();
    for &c in p.board().components() {
        let g = p.graph(c, Player::P1);
        for [a, x, b, y] in oriented_c4s(p, c, Player::P1) {
            for pc in g.neighbors(a) {
                if pc == x || pc == y || pc == b {
                    continue;
                }
                use Slot::*;
                let steps = vec![
                    step(c, V(y), New(0)),
                    step(c, V(y), New(1)),
                    step(c, V(y), New(2)),
                    step(c, V(pc), New(0)),
                    step(c, V(pc), New(1)),
                ];
                out.push(Line::new("claim3.2", steps));
            }
        }
    }
    out
}

/// Lines of the form: C4 `a b c d`; three new leaves at `c`, two of them
/// joined to `d`, then the third.
pub(crate) fn cycle_lines(p: &Position) -> Vec<Line> {
    let mut out = Vec::new();
    for &comp in p.board().components() {
        for [_a, _b, c, d] in oriented_c4s(p, comp, Player::P1) {
            use Slot::*;
            let steps = vec![
                step(comp, V(c), New(0)),
                step(comp, V(c), New(1)),
                step(comp, V(c), New(2)),
                step(comp, V(d), New(0)),
                step(comp, V(d), New(1)),
                step(comp, V(d), New(2)),
            ];
            out.push(Line::new("claim3.1", steps));
        }
    }
    out
}

/// The first scripted line that provably wins from `p` (P1 to move).
pub(crate) fn find_forced_line(p: &Position) -> Option<Line> {
    pendant_lines(p)
        .into_iter()
        .chain(cycle_lines(p))
        .find(|l| l.forces_win(p))
}
