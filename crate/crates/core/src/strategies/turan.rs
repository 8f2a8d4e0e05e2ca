// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Strategy, StrategyDecision};
use crate::board::{Component, Player, Position};
use crate::error::GameError;
use crate::referee::{winning_moves_with, Target};
use crate::graphkit::{build_pattern, for_each_embedding, Edge, PatternSpec, SmallGraph, Vertex};

const C: Component = Component::First;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TuranPhase {
    Fill,
    /// The finishing edge has been claimed.
    Win,
}

fn is_bipartite(g: &SmallGraph) -> bool {
    let adj = g.adjacency();
    let mut side: BTreeMap<Vertex, bool> = BTreeMap::new();
    for &s in adj.keys() {
        if side.contains_key(&s) {
            continue;
        }
        side.insert(s, false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let sv = side[&v];
            for &w in &adj[&v] {
                match side.get(&w) {
                    Some(&sw) if sw == sv => return false,
                    Some(_) => {}
                    None => {
                        side.insert(w, !sv);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    true
}

/// Chromatic number three, and deleting some single edge makes it bipartite.
pub fn is_two_color_critical(h: &SmallGraph) -> bool {
    !is_bipartite(h)
        && h.edges().any(|e| {
            let mut g = h.clone();
            g.remove(e);
            is_bipartite(&g)
        })
}

fn complete_bipartite(m: u32) -> SmallGraph {
    (0..m)
        .flat_map(|a| (m..2 * m).map(move |b| Edge::new(a, b)))
        .collect()
}

/// Takes an immediate win or blocks one when available. Otherwise fills the
/// clique in lexicographic edge order until its own graph holds `K_{m,m}`
/// (m = |V(H)|) with a free edge inside one part, then takes that edge.
/// Meant for finite boards.
#[derive(Clone, Debug)]
pub struct TuranGreedy {
    spec: PatternSpec,
    target: Target,
    m: u32,
    kmm: SmallGraph,
    phase: TuranPhase,
}

impl TuranGreedy {
    pub fn new(spec: &PatternSpec) -> Result<Self, GameError> {
        let h = build_pattern(spec)?;
        if !is_two_color_critical(&h) {
            return Err(GameError::InvalidPattern(format!("{spec} is not 2-color-critical")));
        }
        let m = h.vertex_count() as u32;
        Ok(TuranGreedy {
            spec: spec.clone(),
            target: Target::new(spec)?,
            m,
            kmm: complete_bipartite(m),
            phase: TuranPhase::Fill,
        })
    }

    pub fn phase(&self) -> TuranPhase {
        self.phase
    }

    /// A free edge inside one part of some `K_{m,m}` in P1's graph.
    fn finishing_edge(&self, p: &Position) -> Option<Edge> {
        let mine = p.graph(C, Player::P1);
        let m = self.m;
        let mut found = None;
        for_each_embedding(mine, &self.kmm, |phi| {
            for part in [0..m, m..2 * m] {
                let vs: Vec<Vertex> = part.map(|i| phi[&i]).collect();
                for (i, &a) in vs.iter().enumerate() {
                    for &b in &vs[i + 1..] {
                        let e = Edge::new(a, b);
                        if p.is_unclaimed(C, e) && found.is_none_or(|f| e < f) {
                            found = Some(e);
                        }
                    }
                }
            }
            found.is_some()
        });
        found
    }

    fn first_free_edge(p: &Position) -> Option<Edge> {
        let n = p.board().capacity;
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v)))
            .find(|&e| p.is_unclaimed(C, e))
    }
}

impl Strategy for TuranGreedy {
    fn id(&self) -> String {
        format!("turan:{}", self.spec)
    }

    fn role(&self) -> Player {
        Player::P1
    }

    fn decide(&mut self, p: &Position) -> Result<StrategyDecision, GameError> {
        if let Some(&mv) = winning_moves_with(p, Player::P1, &self.target).first() {
            self.phase = TuranPhase::Win;
            return Ok(StrategyDecision::new(mv, "turan:win"));
        }
        if let Some(&mv) = winning_moves_with(p, Player::P2, &self.target).first() {
            return Ok(StrategyDecision::new(mv, "turan:block"));
        }
        let (e, tag) = match self.finishing_edge(p) {
            Some(e) => {
                self.phase = TuranPhase::Win;
                (e, "turan:finish")
            }
            None => (Self::first_free_edge(p).ok_or(GameError::BoardExhausted)?, "turan:fill"),
        };
        let mv = p.move_for_edge(C, e.lo(), e.hi())?;
        Ok(StrategyDecision::new(mv, tag))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphkit::complete_graph;

    #[test]
    fn critical_examples() {
        assert!(is_two_color_critical(&complete_graph(3)));
        assert!(is_two_color_critical(&build_pattern(&PatternSpec::cycle(5).unwrap()).unwrap()));
        assert!(!is_two_color_critical(&complete_graph(4)));
        assert!(!is_two_color_critical(&build_pattern(&PatternSpec::cycle(4).unwrap()).unwrap()));
        assert!(TuranGreedy::new(&PatternSpec::cycle(4).unwrap()).is_err());
    }

    #[test]
    fn k33_plus_inner_edge_holds_a_triangle() {
        let mut g = complete_bipartite(3);
        g.insert(Edge::new(0, 1));
        assert!(crate::graphkit::contains_pattern(&g, &complete_graph(3)));
    }

    #[test]
    fn blocks_before_filling() {
        use crate::board::{BoardKind, BoardSpec};
        let p = Position::replay(BoardSpec::finite(BoardKind::Single, 8), &[(C, 0, 1), (C, 2, 3), (C, 4, 5), (C, 3, 6)]).unwrap();
        let mut s = TuranGreedy::new(&PatternSpec::cycle(3).unwrap()).unwrap();
        let d = s.decide(&p).unwrap();
        assert_eq!(d.rationale, "turan:block");
        assert_eq!(p.resolve(&d.mv).unwrap(), (C, Edge::new(2, 6)));
    }
}
