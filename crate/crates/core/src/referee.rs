// SPDX-License-Identifier: Apache-2.0

//! Win detection, winning-move enumeration and check semantics.

use serde::{Deserialize, Serialize};

use crate::board::{Component, Move, Player, Position};
use crate::error::GameError;
use crate::graphkit::{
    build_pattern, contains_bits, contains_k2ts_bits, BitGraph, PatternSpec, SmallGraph,
};

/// A target pattern with its materialized graph cached.
#[derive(Clone, Debug)]
pub struct Target {
    spec: PatternSpec,
    graph: SmallGraph,
    bits: BitGraph,
}

impl Target {
    pub fn new(spec: &PatternSpec) -> Result<Self, GameError> {
        let graph = build_pattern(spec)?;
        let bits = BitGraph::new(&graph);
        Ok(Target {
            spec: spec.clone(),
            graph,
            bits,
        })
    }

    pub fn spec(&self) -> &PatternSpec {
        &self.spec
    }

    pub fn graph(&self) -> &SmallGraph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Whether `g` contains a copy of the target. `K_{2,t}(s)` targets take
    /// the codegree fast path.
    pub fn found_in(&self, g: &SmallGraph) -> bool {
        if g.edge_count() < self.graph.edge_count() {
            return false;
        }
        let gb = BitGraph::new(g);
        match self.spec {
            PatternSpec::K2ts { t, s } => contains_k2ts_bits(&gb, t, s),
            _ => contains_bits(&gb, &self.bits),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GameStatus {
    Ongoing,
    /// `at_history_index` is the 0-based index of the winning move.
    WonBy { player: Player, at_history_index: usize },
}

impl GameStatus {
    pub fn winner(&self) -> Option<Player> {
        match self {
            GameStatus::Ongoing => None,
            GameStatus::WonBy { player, .. } => Some(*player),
        }
    }
}

/// Whether `player` currently holds the target inside a single component.
pub fn holds_target(p: &Position, player: Player, target: &Target) -> bool {
    p.board().components().iter().any(|&c| target.found_in(p.graph(c, player)))
}

/// Scans the history for the first move after which its player holds the
/// target inside one component. Copies never straddle components.
pub fn winner_check_with(p: &Position, target: &Target) -> GameStatus {
    let mut graphs: [[SmallGraph; 2]; 2] = Default::default();
    for (i, pm) in p.history().iter().enumerate() {
        let g = &mut graphs[pm.component.index()][pm.player.index()];
        g.insert(pm.edge);
        if target.found_in(g) {
            return GameStatus::WonBy {
                player: pm.player,
                at_history_index: i,
            };
        }
    }
    GameStatus::Ongoing
}

pub fn winner_check(p: &Position, target: &PatternSpec) -> Result<GameStatus, GameError> {
    Ok(winner_check_with(p, &Target::new(target)?))
}

/// True iff claiming `m` for `player` would complete the target.
pub fn move_wins(p: &Position, player: Player, m: &Move, target: &Target) -> bool {
    match p.resolve(m) {
        Ok((c, e)) => target.found_in(&p.graph(c, player).with_edge(e)),
        Err(_) => false,
    }
}

/// Every legal move (under the fresh-vertex convention) that would complete
/// the target for `player`, whoever is to move.
pub fn winning_moves_with(p: &Position, player: Player, target: &Target) -> Vec<Move> {
    p.candidate_moves()
        .into_iter()
        .filter(|m| move_wins(p, player, m, target))
        .collect()
}

pub fn winning_moves(p: &Position, player: Player, target: &PatternSpec) -> Result<Vec<Move>, GameError> {
    Ok(winning_moves_with(p, player, &Target::new(target)?))
}

/// `player` threatens to win with their next move.
pub fn is_check_with(p: &Position, player: Player, target: &Target) -> bool {
    p.candidate_moves().iter().any(|m| move_wins(p, player, m, target))
}

pub fn is_check(p: &Position, player: Player, target: &PatternSpec) -> Result<bool, GameError> {
    Ok(is_check_with(p, player, &Target::new(target)?))
}

/// The opponent of `player` threatens to win.
pub fn is_in_check(p: &Position, player: Player, target: &PatternSpec) -> Result<bool, GameError> {
    is_check(p, player.opponent(), target)
}

/// Nonempty and all edges share one vertex. A single edge is a star.
pub fn is_star(g: &SmallGraph) -> bool {
    let Some(first) = g.edges().next() else {
        return false;
    };
    let (u, v) = first.endpoints();
    g.edges().all(|e| e.contains(u)) || g.edges().all(|e| e.contains(v))
}

/// Concrete edges of the moves, resolved against `p` (for display).
pub fn resolved_edges(p: &Position, moves: &[Move]) -> Vec<(Component, crate::graphkit::Edge)> {
    moves.iter().filter_map(|m| p.resolve(m).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BoardKind, BoardSpec};
    use crate::graphkit::{path_graph, star_graph};

    const A: Component = Component::First;
    const B: Component = Component::Second;

    /// Replays alternating P1/P2 moves given as concrete edges.
    fn play(moves: &[(Component, u32, u32)]) -> Position {
        Position::replay(BoardSpec::finite(BoardKind::Double, 60), moves).unwrap()
    }

    #[test]
    fn p1_holding_k23_has_won() {
        // P1: K_{2,3} with cores 0,2 on leaves 1,3,4; P2 idles in component 2.
        let p = play(&[
            (A, 0, 1), (B, 0, 1), (A, 1, 2), (B, 2, 3), (A, 0, 3),
            (B, 4, 5), (A, 3, 2), (B, 6, 7), (A, 0, 4), (B, 8, 9), (A, 4, 2),
        ]);
        let st = winner_check(&p, &PatternSpec::k2ts(3, 0).unwrap()).unwrap();
        assert_eq!(st, GameStatus::WonBy { player: Player::P1, at_history_index: 10 });
    }

    #[test]
    fn eight_edges_never_hold_a_nine_edge_target() {
        let target = PatternSpec::k2ts(4, 1).unwrap();
        // P2 builds K_{2,3}(2) in component 2: u=0 with x1..x5 = 1..5, v=6.
        let p = play(&[
            (A, 0, 1), (B, 0, 1), (A, 2, 3), (B, 0, 2), (A, 4, 5), (B, 0, 3), (A, 6, 7),
            (B, 0, 4), (A, 8, 9), (B, 0, 5), (A, 10, 11), (B, 1, 6), (A, 12, 13), (B, 2, 6),
            (A, 14, 15), (B, 3, 6),
        ]);
        assert_eq!(winner_check(&p, &target).unwrap(), GameStatus::Ongoing);
    }

    #[test]
    fn copies_do_not_straddle_components() {
        // P1 has a path 0-1-2 in each component; together they would close no cycle.
        let p = play(&[(A, 0, 1), (A, 2, 3), (A, 1, 4), (A, 5, 6), (B, 0, 1), (A, 7, 8), (B, 1, 2)]);
        let st = winner_check(&p, &PatternSpec::cycle(4).unwrap()).unwrap();
        assert_eq!(st, GameStatus::Ongoing);
    }

    #[test]
    fn empty_position_has_no_winning_moves() {
        let p = Position::new(BoardSpec::finite(BoardKind::Double, 60));
        assert!(winning_moves(&p, Player::P1, &PatternSpec::cycle(3).unwrap()).unwrap().is_empty());
        assert!(!is_check(&p, Player::P1, &PatternSpec::k2ts(2, 0).unwrap()).unwrap());
    }

    #[test]
    fn path_is_closed_by_its_unique_edge() {
        // P1 path 0-1-2-3-4 in component 1, target C_5.
        let p = play(&[(A, 0, 1), (B, 0, 1), (A, 1, 2), (B, 2, 3), (A, 2, 3), (B, 4, 5), (A, 3, 4), (B, 6, 7)]);
        let target = PatternSpec::cycle(5).unwrap();
        let wins = winning_moves(&p, Player::P1, &target).unwrap();
        assert_eq!(wins, vec![Move::used(A, 0, 4)]);
        assert!(is_check(&p, Player::P1, &target).unwrap());
        assert!(is_in_check(&p, Player::P2, &target).unwrap());
    }

    #[test]
    fn star_examples() {
        assert!(is_star(&path_graph(1)));
        assert!(is_star(&star_graph(4)));
        assert!(!is_star(&path_graph(3)));
        assert!(!is_star(&SmallGraph::new()));
    }
}
