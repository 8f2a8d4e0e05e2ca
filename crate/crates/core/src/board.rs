// SPDX-License-Identifier: Apache-2.0

//! Boards made of one or two cliques, with an unbounded-looking supply of
//! fresh vertices up to a capacity per component.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GameError;
use crate::graphkit::{canonical_labeling, CanonicalKey, Edge, PatternSpec, SmallGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    P1,
    P2,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::P1 => Player::P2,
            Player::P2 => Player::P1,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::P1 => "p1",
            Player::P2 => "p2",
        })
    }
}

/// Board component. Serialized as 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    First,
    Second,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::First, Component::Second];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Result<Self, GameError> {
        match n {
            1 => Ok(Component::First),
            2 => Ok(Component::Second),
            _ => Err(GameError::IllegalMove(format!("no component {n}"))),
        }
    }

    pub fn other(self) -> Component {
        match self {
            Component::First => Component::Second,
            Component::Second => Component::First,
        }
    }
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Component {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Component::from_number(u8::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoardKind {
    Single,
    Double,
}

impl BoardKind {
    pub fn parse(s: &str) -> Result<Self, GameError> {
        match s {
            "single" => Ok(BoardKind::Single),
            "double" => Ok(BoardKind::Double),
            _ => Err(GameError::InvalidBoard(format!("expected single|double, got {s:?}"))),
        }
    }
}

/// Default materialized-vertex limit per component for scripted play.
pub const DEFAULT_CAPACITY: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoardSpec {
    pub kind: BoardKind,
    pub capacity: u32,
}

impl BoardSpec {
    /// A board standing in for `K_n` with `n` large: capacity is the larger
    /// of [`DEFAULT_CAPACITY`] and `4 e(H) + 4`.
    pub fn for_target(kind: BoardKind, target: &PatternSpec) -> Self {
        let need = 4 * target.edge_count() as u32 + 4;
        BoardSpec {
            kind,
            capacity: need.max(DEFAULT_CAPACITY),
        }
    }

    /// A concrete board with exactly `n` vertices per component.
    pub fn finite(kind: BoardKind, n: u32) -> Self {
        BoardSpec { kind, capacity: n }
    }

    pub fn components(&self) -> &'static [Component] {
        match self.kind {
            BoardKind::Single => &Component::BOTH[..1],
            BoardKind::Double => &Component::BOTH[..],
        }
    }

    /// Checks the room needed by any scripted strategy for `target`.
    pub fn check_capacity(&self, target: &PatternSpec) -> Result<(), GameError> {
        let need = 4 * target.edge_count() as u32 + 4;
        if self.capacity < need {
            return Err(GameError::InvalidBoard(format!(
                "capacity {} below {need} needed for {target}",
                self.capacity
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexRef {
    Used(Vertex),
    /// The lowest vertex id not yet materialized in the component.
    Fresh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub component: Component,
    pub a: VertexRef,
    pub b: VertexRef,
}

impl Move {
    pub fn new(component: Component, a: VertexRef, b: VertexRef) -> Self {
        Move { component, a, b }
    }

    pub fn used(component: Component, u: Vertex, v: Vertex) -> Self {
        Move::new(component, VertexRef::Used(u), VertexRef::Used(v))
    }

    pub fn fresh_from(component: Component, u: Vertex) -> Self {
        Move::new(component, VertexRef::Used(u), VertexRef::Fresh)
    }

    pub fn fresh_pair(component: Component) -> Self {
        Move::new(component, VertexRef::Fresh, VertexRef::Fresh)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: VertexRef| match r {
            VertexRef::Used(v) => v.to_string(),
            VertexRef::Fresh => "*".to_string(),
        };
        write!(f, "B{}:{}-{}", self.component.number(), show(self.a), show(self.b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlayedMove {
    pub player: Player,
    pub component: Component,
    pub edge: Edge,
}

/// Full game state. Value semantics: [`Position::apply_move`] returns a new
/// position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    board: BoardSpec,
    /// `claimed[component][player]`
    claimed: [[SmallGraph; 2]; 2],
    materialized: [u32; 2],
    history: Vec<PlayedMove>,
}

impl Position {
    pub fn new(board: BoardSpec) -> Self {
        Position {
            board,
            claimed: Default::default(),
            materialized: [0, 0],
            history: Vec::new(),
        }
    }

    pub fn board(&self) -> BoardSpec {
        self.board
    }

    pub fn history(&self) -> &[PlayedMove] {
        &self.history
    }

    pub fn mover(&self) -> Player {
        if self.history.len().is_multiple_of(2) {
            Player::P1
        } else {
            Player::P2
        }
    }

    /// Number of edges claimed so far by `player`.
    pub fn moves_made(&self, player: Player) -> usize {
        match player {
            Player::P1 => self.history.len().div_ceil(2),
            Player::P2 => self.history.len() / 2,
        }
    }

    pub fn graph(&self, component: Component, player: Player) -> &SmallGraph {
        &self.claimed[component.index()][player.index()]
    }

    pub fn materialized(&self, component: Component) -> u32 {
        self.materialized[component.index()]
    }

    /// Vertices touched by some claimed edge: exactly the materialized ones.
    pub fn used_vertices(&self, component: Component) -> std::ops::Range<Vertex> {
        0..self.materialized[component.index()]
    }

    pub fn is_used(&self, component: Component, v: Vertex) -> bool {
        v < self.materialized(component)
    }

    pub fn owner(&self, component: Component, e: Edge) -> Option<Player> {
        let c = &self.claimed[component.index()];
        if c[0].contains_edge(e) {
            Some(Player::P1)
        } else if c[1].contains_edge(e) {
            Some(Player::P2)
        } else {
            None
        }
    }

    pub fn is_unclaimed(&self, component: Component, e: Edge) -> bool {
        self.owner(component, e).is_none()
    }

    pub fn unused_count(&self, component: Component) -> u32 {
        self.board.capacity - self.materialized(component)
    }

    /// Concrete edge a move would claim, without applying it.
    pub fn resolve(&self, m: &Move) -> Result<(Component, Edge), GameError> {
        let component = self.effective_component(m.component)?;
        let mut next = self.materialized(component);
        let mut fresh_used = 0u32;
        let mut resolve = |r: VertexRef| -> Result<Vertex, GameError> {
            match r {
                VertexRef::Used(v) if v < next => Ok(v),
                VertexRef::Used(v) => Err(GameError::IllegalMove(format!(
                    "vertex {v} is not materialized in component {}",
                    component.number()
                ))),
                VertexRef::Fresh => {
                    let v = next;
                    next += 1;
                    fresh_used += 1;
                    Ok(v)
                }
            }
        };
        let u = resolve(m.a)?;
        let v = resolve(m.b)?;
        if self.materialized(component) + fresh_used > self.board.capacity {
            return Err(GameError::CapacityExceeded(component.number()));
        }
        let e = Edge::try_new(u, v).map_err(|_| GameError::IllegalMove(format!("loop at {u}")))?;
        if let Some(p) = self.owner(component, e) {
            return Err(GameError::IllegalMove(format!(
                "edge {e} in component {} already claimed by {p}",
                component.number()
            )));
        }
        Ok((component, e))
    }

    /// P1's opening move defines component 1; an opening in component 2 is
    /// relabeled.
    fn effective_component(&self, c: Component) -> Result<Component, GameError> {
        if c == Component::Second && self.board.kind == BoardKind::Single {
            return Err(GameError::IllegalMove("single-clique board has one component".into()));
        }
        if self.history.is_empty() {
            Ok(Component::First)
        } else {
            Ok(c)
        }
    }

    pub fn apply_move(&self, m: &Move) -> Result<Position, GameError> {
        let (component, e) = self.resolve(m)?;
        let mut next = self.clone();
        let player = self.mover();
        let ci = component.index();
        next.materialized[ci] = next.materialized[ci].max(e.hi() + 1);
        next.claimed[ci][player.index()].insert(e);
        next.history.push(PlayedMove { player, component, edge: e });
        Ok(next)
    }

    /// The move naming a concrete edge; an endpoint at the first unmaterialized
    /// id becomes `Fresh`.
    pub fn move_for_edge(&self, component: Component, u: Vertex, v: Vertex) -> Result<Move, GameError> {
        let c = self.effective_component(component)?;
        let m = self.materialized(c);
        let (lo, hi) = (u.min(v), u.max(v));
        let as_ref = |x: Vertex, fresh_slot: Vertex| -> Result<VertexRef, GameError> {
            if x < m {
                Ok(VertexRef::Used(x))
            } else if x == fresh_slot {
                Ok(VertexRef::Fresh)
            } else {
                Err(GameError::IllegalMove(format!(
                    "vertex {x} skips unmaterialized ids in component {}",
                    c.number()
                )))
            }
        };
        let a = as_ref(lo, m)?;
        let b = as_ref(hi, if a == VertexRef::Fresh { m + 1 } else { m })?;
        Ok(Move::new(c, a, b))
    }

    /// Replays a move list from an empty board.
    pub fn replay(board: BoardSpec, moves: &[(Component, Vertex, Vertex)]) -> Result<Position, GameError> {
        let mut p = Position::new(board);
        for &(c, u, v) in moves {
            let m = p.move_for_edge(c, u, v)?;
            p = p.apply_move(&m)?;
        }
        Ok(p)
    }

    /// Position after the first `len` moves of the history.
    pub fn prefix(&self, len: usize) -> Position {
        let moves: Vec<_> = self.history[..len]
            .iter()
            .map(|pm| (pm.component, pm.edge.lo(), pm.edge.hi()))
            .collect();
        Position::replay(self.board, &moves).expect("history prefix replays")
    }

    /// Edge-count lead of P1 over P2 inside component 1.
    pub fn delta(&self) -> Result<i64, GameError> {
        if self.board.kind != BoardKind::Double {
            return Err(GameError::WrongBoardKind);
        }
        let c = Component::First;
        Ok(self.graph(c, Player::P1).edge_count() as i64 - self.graph(c, Player::P2).edge_count() as i64)
    }

    /// Every legal move up to the fresh-vertex convention: used-used pairs,
    /// each used vertex with one fresh vertex, one fresh-fresh pair per
    /// component.
    pub fn candidate_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        let components: &[Component] = if self.history.is_empty() {
            &Component::BOTH[..1]
        } else {
            self.board.components()
        };
        for &c in components {
            let m = self.materialized(c);
            for u in 0..m {
                for v in (u + 1)..m {
                    if self.is_unclaimed(c, Edge::new(u, v)) {
                        out.push(Move::used(c, u, v));
                    }
                }
            }
            if m < self.board.capacity {
                out.extend((0..m).map(|u| Move::fresh_from(c, u)));
            }
            if m + 2 <= self.board.capacity {
                out.push(Move::fresh_pair(c));
            }
        }
        out
    }

    fn component_code(&self, c: Component) -> CanonicalKey {
        let colored: BTreeMap<Edge, u8> = self
            .graph(c, Player::P1)
            .edges()
            .map(|e| (e, 0))
            .chain(self.graph(c, Player::P2).edges().map(|e| (e, 1)))
            .collect();
        canonical_labeling(&colored).0
    }

    fn combine(&self, codes: &[CanonicalKey]) -> CanonicalKey {
        let mut sorted: Vec<&CanonicalKey> = codes.iter().collect();
        sorted.sort();
        let mut bytes = Vec::new();
        for k in sorted {
            bytes.extend((k.as_bytes().len() as u32).to_be_bytes());
            bytes.extend_from_slice(k.as_bytes());
        }
        CanonicalKey::from_bytes(bytes)
    }

    /// Canonical key of the two-colored position. Component swap is a
    /// symmetry of the double board, so the component codes are sorted.
    pub fn key(&self) -> CanonicalKey {
        let codes: Vec<CanonicalKey> = self.board.components().iter().map(|&c| self.component_code(c)).collect();
        self.combine(&codes)
    }

    /// One representative per orbit of legal moves under the symmetries of
    /// the colored position, in candidate order.
    pub fn symmetric_move_classes(&self) -> Vec<Move> {
        let comps = self.board.components();
        let base: Vec<CanonicalKey> = comps.iter().map(|&c| self.component_code(c)).collect();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for m in self.candidate_moves() {
            let Ok(next) = self.apply_move(&m) else { continue };
            let mut codes = base.clone();
            let (c, _) = self.resolve(&m).expect("candidate resolves");
            codes[c.index()] = next.component_code(c);
            if seen.insert(self.combine(&codes)) {
                out.push(m);
            }
        }
        out
    }

    /// The colored edge map of one component (P1 color 0, P2 color 1).
    pub fn colored_component(&self, c: Component) -> BTreeMap<Edge, u8> {
        self.graph(c, Player::P1)
            .edges()
            .map(|e| (e, 0))
            .chain(self.graph(c, Player::P2).edges().map(|e| (e, 1)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double() -> BoardSpec {
        BoardSpec::finite(BoardKind::Double, 40)
    }

    #[test]
    fn fresh_pair_opens_edge_zero_one() {
        let p = Position::new(double()).apply_move(&Move::fresh_pair(Component::First)).unwrap();
        assert_eq!(p.history().len(), 1);
        assert!(p.graph(Component::First, Player::P1).has_edge(0, 1));
        assert_eq!(p.mover(), Player::P2);
    }

    #[test]
    fn reclaiming_is_illegal() {
        let p = Position::new(double()).apply_move(&Move::fresh_pair(Component::First)).unwrap();
        let err = p.apply_move(&Move::used(Component::First, 0, 1)).unwrap_err();
        assert!(matches!(err, GameError::IllegalMove(_)));
    }

    #[test]
    fn capacity_is_a_hard_limit() {
        let mut p = Position::new(BoardSpec::finite(BoardKind::Double, 4));
        let mut result = Ok(());
        for _ in 0..4 {
            match p.apply_move(&Move::fresh_pair(Component::First)) {
                Ok(n) => p = n,
                Err(e) => {
                    result = Err(e);
                    break;
                }
            }
        }
        assert_eq!(result, Err(GameError::CapacityExceeded(1)));
    }

    #[test]
    fn opening_in_second_component_is_relabeled() {
        let p = Position::new(double()).apply_move(&Move::fresh_pair(Component::Second)).unwrap();
        assert_eq!(p.graph(Component::First, Player::P1).edge_count(), 1);
        assert_eq!(p.materialized(Component::Second), 0);
    }

    #[test]
    fn delta_counts_component_one_only() {
        let p = Position::new(double());
        assert_eq!(p.delta(), Ok(0));
        let p = p
            .apply_move(&Move::fresh_pair(Component::First))
            .unwrap()
            .apply_move(&Move::fresh_pair(Component::Second))
            .unwrap();
        assert_eq!(p.delta(), Ok(1));
        let single = Position::new(BoardSpec::finite(BoardKind::Single, 10));
        assert_eq!(single.delta(), Err(GameError::WrongBoardKind));
    }

    #[test]
    fn empty_boards_have_one_class() {
        assert_eq!(Position::new(double()).symmetric_move_classes().len(), 1);
        assert_eq!(Position::new(BoardSpec::finite(BoardKind::Single, 10)).symmetric_move_classes().len(), 1);
    }

    #[test]
    fn single_opening_edge_gives_three_classes() {
        let p = Position::new(double()).apply_move(&Move::fresh_pair(Component::First)).unwrap();
        let classes = p.symmetric_move_classes();
        assert_eq!(classes.len(), 3, "{classes:?}");
    }

    #[test]
    fn move_for_edge_round_trips_history() {
        let moves = [(Component::First, 0, 1), (Component::Second, 0, 1), (Component::First, 1, 2)];
        let p = Position::replay(double(), &moves).unwrap();
        assert_eq!(p.prefix(2).history(), &p.history()[..2]);
        assert!(p.move_for_edge(Component::First, 0, 7).is_err());
    }
}
