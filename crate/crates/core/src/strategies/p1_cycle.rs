// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{Strategy, StrategyDecision};
use crate::board::{Component, Move, Player, Position};
use crate::error::GameError;
use crate::graphkit::{PatternSpec, SmallGraph, Vertex};
use crate::referee::{winning_moves_with, Target};

const C: Component = Component::First;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum P1CyclePhase {
    Grow,
    Extend,
    Fork1,
    Fork2,
    Finish,
    Done,
}

/// `SkipSecondFork` is a deliberately broken script used to check that the
/// verifier rejects it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CycleVariant {
    #[default]
    Standard,
    SkipSecondFork,
}

/// P1 plan for the cycle `C_len` on one clique: a path on fresh vertices,
/// two forks at its start, then a double threat.
#[derive(Clone, Debug)]
pub struct P1Cycle {
    len: u32,
    variant: CycleVariant,
    target: Target,
    path: Vec<Vertex>,
    forks: Vec<Vertex>,
}

/// Endpoints of `g` if it is a single path with at least one edge.
fn path_endpoints(g: &SmallGraph) -> Option<(Vertex, Vertex)> {
    if g.is_empty() || g.vertex_count() != g.edge_count() + 1 {
        return None;
    }
    let adj = g.adjacency();
    if adj.values().any(|n| n.len() > 2) {
        return None;
    }
    let ends: Vec<Vertex> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(&v, _)| v).collect();
    let [a, b] = ends[..] else { return None };
    // walk from one leaf; a path reaches every vertex
    let (mut prev, mut cur, mut seen) = (a, a, 1);
    while let Some(&next) = adj[&cur].iter().find(|&&w| w != prev) {
        (prev, cur) = (cur, next);
        seen += 1;
    }
    (cur == b && seen == adj.len()).then_some((a, b))
}

impl P1Cycle {
    pub fn new(len: u32) -> Result<Self, GameError> {
        Self::with_variant(len, CycleVariant::Standard)
    }

    pub fn with_variant(len: u32, variant: CycleVariant) -> Result<Self, GameError> {
        let target = Target::new(&PatternSpec::cycle(len)?)?;
        Ok(P1Cycle {
            len,
            variant,
            target,
            path: Vec::new(),
            forks: Vec::new(),
        })
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    fn grow_len(&self) -> usize {
        (self.len as usize - 3).max(1)
    }

    /// Script step for P1's next move, given P1 has made `k` moves.
    pub fn phase_at(&self, k: usize) -> P1CyclePhase {
        let l = self.len as usize;
        if k < self.grow_len() {
            P1CyclePhase::Grow
        } else if k < l - 2 {
            P1CyclePhase::Extend
        } else if k == l - 2 {
            P1CyclePhase::Fork1
        } else if k == l - 1 {
            match self.variant {
                CycleVariant::Standard => P1CyclePhase::Fork2,
                CycleVariant::SkipSecondFork => P1CyclePhase::Finish,
            }
        } else if k == l && self.variant == CycleVariant::Standard {
            P1CyclePhase::Finish
        } else {
            P1CyclePhase::Done
        }
    }

    fn tail(&self) -> Vertex {
        *self.path.last().expect("path started")
    }

    /// Claims `from`-Fresh and returns the new vertex.
    fn to_fresh(p: &Position, from: Vertex) -> (Move, Vertex) {
        (Move::fresh_from(C, from), p.materialized(C))
    }

    fn check_script(&self, p: &Position) -> Result<(), GameError> {
        let mine = p.graph(C, Player::P1);
        let intact = self.path.windows(2).all(|w| mine.has_edge(w[0], w[1]))
            && self.forks.iter().all(|&f| mine.has_edge(self.path[0], f));
        if intact {
            Ok(())
        } else {
            Err(GameError::StrategyUndefined("cycle script diverged from the board".into()))
        }
    }
}

impl Strategy for P1Cycle {
    fn id(&self) -> String {
        format!("p1-cycle:{}", self.len)
    }

    fn role(&self) -> Player {
        Player::P1
    }

    fn decide(&mut self, p: &Position) -> Result<StrategyDecision, GameError> {
        if let Some(&m) = winning_moves_with(p, Player::P1, &self.target).first() {
            return Ok(StrategyDecision::new(m, "win"));
        }
        self.check_script(p)?;
        let k = p.moves_made(Player::P1);
        let phase = self.phase_at(k);
        let (mv, tag) = match phase {
            P1CyclePhase::Grow if k == 0 => {
                let m = p.materialized(C);
                self.path = vec![m, m + 1];
                (Move::fresh_pair(C), "grow")
            }
            P1CyclePhase::Grow => {
                let (mv, v) = Self::to_fresh(p, self.tail());
                self.path.push(v);
                (mv, "grow")
            }
            P1CyclePhase::Extend => {
                // never let P2's path share both endpoints with ours
                if let Some((a, b)) = path_endpoints(p.graph(C, Player::P2)) {
                    let (v0, vt) = (self.path[0], self.tail());
                    if (a == v0 || b == v0) && !(a == vt || b == vt) {
                        self.path.reverse();
                    }
                }
                let (mv, v) = Self::to_fresh(p, self.tail());
                self.path.push(v);
                (mv, "extend")
            }
            P1CyclePhase::Fork1 => {
                if let Some((a, b)) = path_endpoints(p.graph(C, Player::P2)) {
                    if a == self.tail() || b == self.tail() {
                        self.path.reverse();
                    }
                }
                let (mv, x) = Self::to_fresh(p, self.path[0]);
                self.forks.push(x);
                (mv, "fork1")
            }
            P1CyclePhase::Fork2 => {
                let (mv, y) = Self::to_fresh(p, self.path[0]);
                self.forks.push(y);
                (mv, "fork2")
            }
            P1CyclePhase::Finish => {
                let at = self.path[self.len as usize - 3];
                (Self::to_fresh(p, at).0, "finish")
            }
            P1CyclePhase::Done => {
                return Err(GameError::StrategyUndefined(format!(
                    "no scripted move after {k} moves"
                )))
            }
        };
        Ok(StrategyDecision::new(mv, tag))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BoardKind, BoardSpec, VertexRef};

    fn board() -> Position {
        Position::new(BoardSpec::finite(BoardKind::Single, 40))
    }

    fn step(s: &mut P1Cycle, p: &Position, reply: (u32, u32)) -> (StrategyDecision, Position) {
        let d = s.decide(p).unwrap();
        let q = p.apply_move(&d.mv).unwrap();
        let r = q.move_for_edge(C, reply.0, reply.1).unwrap();
        (d, q.apply_move(&r).unwrap())
    }

    #[test]
    fn five_cycle_script() {
        let mut s = P1Cycle::new(5).unwrap();
        let p = board();
        let (d, p) = step(&mut s, &p, (2, 3));
        assert_eq!((d.mv, d.rationale.as_str()), (Move::fresh_pair(C), "grow"));
        let (d, p) = step(&mut s, &p, (3, 5));
        assert_eq!(d.rationale, "grow");
        // path 0-1-4, P2 holds 2-3-5 which avoids v0, so the tail is extended
        let (d, p) = step(&mut s, &p, (7, 8));
        assert_eq!((d.mv, d.rationale.as_str()), (Move::fresh_from(C, 4), "extend"));
        let d = s.clone().decide(&p).unwrap();
        assert_eq!(d.rationale, "fork1");
        assert_eq!(d.mv.a, VertexRef::Used(0));
    }

    #[test]
    fn phases_for_short_cycles() {
        let s = P1Cycle::new(3).unwrap();
        let got: Vec<_> = (0..6).map(|k| s.phase_at(k)).collect();
        use P1CyclePhase::*;
        assert_eq!(got, vec![Grow, Fork1, Fork2, Finish, Done, Done]);
        let s = P1Cycle::new(4).unwrap();
        assert_eq!(s.phase_at(1), Extend);
    }

    #[test]
    fn path_endpoint_detection() {
        let g = SmallGraph::from_edges([(0, 1), (1, 2)]).unwrap();
        assert_eq!(path_endpoints(&g), Some((0, 2)));
        let g = SmallGraph::from_edges([(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert_eq!(path_endpoints(&g), None);
    }
}
