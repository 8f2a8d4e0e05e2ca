// SPDX-License-Identifier: Apache-2.0

use super::k23_lines::{edge_move, find_forced_line, winning_edges, Line};
use super::{Strategy, StrategyDecision};
use crate::board::{Component, Move, Player, Position, VertexRef};
use crate::error::GameError;
use crate::graphkit::{find_isomorphism, Vertex};

const B1: Component = Component::First;

/// Named vertices of the opening tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum N {
    A,
    B,
    C,
    D,
    X1,
    X2,
    X3,
    Y1,
}

const NAMES: usize = 8;

/// Node of the opening tree: the position right after P1's prescribed move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K23Node {
    Root,
    Left,
    Right,
    LeftCross,
    LeftCross2,
    LeftCross3,
    LeftPath,
    LeftPath2,
    LeftPath3,
    RightCross,
    RightCross2,
    RightCross3,
    Leaf(u8),
}

struct NodeDef {
    mv: (N, N),
    branches: &'static [(N, N, K23Node)],
    otherwise: Option<K23Node>,
}

fn node_def(node: K23Node) -> NodeDef {
    use K23Node::*;
    use N::*;
    let def = |mv, branches, otherwise| NodeDef { mv, branches, otherwise };
    match node {
        Root => def((A, X1), &[(C, Y1, Left), (A, Y1, Right)], None),
        Left => def((A, X2), &[(C, X1, LeftCross), (X1, X2, LeftPath)], Some(Leaf(1))),
        Right => def((A, X2), &[(Y1, X1, RightCross)], Some(Leaf(2))),
        LeftCross => def((X2, Y1), &[(X1, Y1, LeftCross2)], Some(Leaf(3))),
        LeftCross2 => def((B, X2), &[(B, X1, LeftCross3)], Some(Leaf(7))),
        LeftCross3 => def((B, D), &[(A, D, Leaf(10))], Some(Leaf(11))),
        LeftPath => def((X1, Y1), &[(X2, Y1, LeftPath2)], Some(Leaf(4))),
        LeftPath2 => def((X1, C), &[(C, X2, LeftPath3)], Some(Leaf(8))),
        LeftPath3 => def((C, D), &[(D, Y1, Leaf(12))], Some(Leaf(13))),
        RightCross => def((B, X1), &[(B, X2, RightCross2), (B, Y1, Leaf(5))], Some(Leaf(6))),
        RightCross2 => def((C, X1), &[(C, X2, RightCross3)], Some(Leaf(9))),
        RightCross3 => def((A, D), &[(B, D, Leaf(14))], Some(Leaf(15))),
        Leaf(k) => {
            let mv = match k {
                1 | 2 | 5 => (A, X3),
                3 => (X1, Y1),
                4 => (X2, Y1),
                6 => (B, X2),
                7 => (B, X1),
                8 | 9 => (C, X2),
                10 | 13 => (D, Y1),
                11 | 12 => (A, D),
                14 => (C, D),
                _ => (B, D),
            };
            def(mv, &[], None)
        }
    }
}

fn node_tag(node: K23Node) -> String {
    match node {
        K23Node::Root => "fig4:root".into(),
        K23Node::Left => "fig4:left".into(),
        K23Node::Right => "fig4:right".into(),
        K23Node::Leaf(k) => format!("fig4:leaf({k})"),
        other => format!("fig4:{other:?}").to_lowercase(),
    }
}

/// P1 on two cliques against `K_{2,3}`: a fixed opening tree matched up to
/// isomorphism, short preludes, then forcing lines built on an own `C_4`.
#[derive(Clone, Debug)]
pub struct P1K23 {
    node: Option<K23Node>,
    /// Leaf reached by the opening, kept for the preludes.
    leaf: Option<u8>,
    names: [Option<Vertex>; NAMES],
    prelude_done: u8,
    line: Option<Line>,
}

impl Default for P1K23 {
    fn default() -> Self {
        Self::new()
    }
}

impl P1K23 {
    pub fn new() -> Self {
        P1K23 {
            node: None,
            leaf: None,
            names: [None; NAMES],
            prelude_done: 0,
            line: None,
        }
    }

    pub fn node(&self) -> Option<K23Node> {
        self.node
    }

    fn name(&self, n: N) -> Option<Vertex> {
        self.names[n as usize]
    }

    fn slot(&self, n: N) -> VertexRef {
        self.name(n).map_or(VertexRef::Fresh, VertexRef::Used)
    }

    /// Move for a named edge in component 1; unbound names become fresh.
    fn named_move(&self, (n1, n2): (N, N)) -> Move {
        Move::new(B1, self.slot(n1), self.slot(n2))
    }

    /// Plays the named edge, binding any fresh endpoint.
    fn play_named(&mut self, p: &Position, e: (N, N)) -> Option<Move> {
        let mv = self.named_move(e);
        let (_, edge) = p.resolve(&mv).ok()?;
        let mut fresh = p.materialized(B1);
        for n in [e.0, e.1] {
            if self.name(n).is_none() {
                self.names[n as usize] = Some(fresh);
                fresh += 1;
            }
        }
        debug_assert!(edge.contains(self.name(e.0).unwrap()) && edge.contains(self.name(e.1).unwrap()));
        Some(mv)
    }

    /// Whether P2's last reply realizes the labeled edge up to isomorphism of
    /// component 1; on success returns the names rebound to the actual board.
    fn match_reply(&self, prev: &Position, cur: &Position, label: (N, N)) -> Option<[Option<Vertex>; NAMES]> {
        if cur.history().last()?.component != B1 {
            return None;
        }
        let expected = prev.apply_move(&self.named_move(label)).ok()?;
        let iso = find_isomorphism(&expected.colored_component(B1), &cur.colored_component(B1))?;
        let mut names = self.names;
        let mut fresh = prev.materialized(B1);
        for n in [label.0, label.1] {
            if names[n as usize].is_none() {
                names[n as usize] = Some(fresh);
                fresh += 1;
            }
        }
        for slot in names.iter_mut() {
            if let Some(v) = slot {
                *slot = Some(*iso.get(v)?);
            }
        }
        Some(names)
    }

    /// Next tree node for P2's last reply, rebinding names as matched.
    fn classify(&mut self, p: &Position, node: K23Node) -> Option<K23Node> {
        let def = node_def(node);
        let last = p.history().last()?;
        if node == K23Node::Root && last.component != B1 {
            // a reply in the other component is treated as the disjoint one,
            // with its endpoints left unnamed
            return Some(K23Node::Left);
        }
        let prev = p.prefix(p.history().len() - 1);
        for &(n1, n2, child) in def.branches {
            if let Some(names) = self.match_reply(&prev, p, (n1, n2)) {
                self.names = names;
                return Some(child);
            }
        }
        def.otherwise
    }

    fn tree_move(&mut self, p: &Position) -> Option<StrategyDecision> {
        if p.moves_made(Player::P1) == 0 {
            let mv = self.play_named(p, node_def(K23Node::Root).mv)?;
            self.node = Some(K23Node::Root);
            return Some(StrategyDecision::new(mv, node_tag(K23Node::Root)));
        }
        let node = self.node?;
        if let K23Node::Leaf(k) = node {
            self.leaf = Some(k);
            self.node = None;
            return None;
        }
        let child = self.classify(p, node);
        self.node = None;
        let child = child?;
        let mv = self.play_named(p, node_def(child).mv)?;
        self.node = Some(child);
        Some(StrategyDecision::new(mv, node_tag(child)))
    }

    /// Leaf-specific quiet moves that set up a pendant `C_4`.
    fn prelude(&mut self, p: &Position) -> Option<StrategyDecision> {
        let leaf = self.leaf?;
        let tag = format!("prelude({leaf})");
        let p2 = p.graph(B1, Player::P2);
        let xs = [N::X1, N::X2, N::X3];
        match (leaf, self.prelude_done) {
            (1 | 2, 0 | 1) => {
                let b = self.name(N::B);
                let pick = xs
                    .iter()
                    .filter_map(|&n| Some((n, self.name(n)?)))
                    .filter(|&(_, x)| b.is_none_or(|b| p.is_unclaimed(B1, crate::graphkit::Edge::new(b, x))))
                    .max_by_key(|&(_, x)| (p2.degree(x), std::cmp::Reverse(x)))?;
                let mv = self.play_named(p, (N::B, pick.0))?;
                self.prelude_done += 1;
                Some(StrategyDecision::new(mv, tag))
            }
            (5, 0) => {
                self.prelude_done += 1;
                let mv = self
                    .play_named(p, (N::B, N::X2))
                    .or_else(|| self.play_named(p, (N::B, N::X3)))?;
                Some(StrategyDecision::new(mv, tag))
            }
            _ => None,
        }
    }

    fn forced(&mut self, p: &Position) -> Option<StrategyDecision> {
        if let Some(line) = &self.line {
            if !line.forces_win(p) {
                self.line = None;
            }
        }
        if self.line.is_none() {
            self.line = find_forced_line(p);
        }
        let line = self.line.as_mut()?;
        let mv = line.next_move(p)?;
        Some(StrategyDecision::new(mv, format!("{}:step{}", line.name, line.next)))
    }

    /// A move after which every reply leaves P1 a forced line; otherwise the
    /// move with the most such replies.
    fn quiet(&self, p: &Position) -> Option<StrategyDecision> {
        let mut best: Option<(usize, Move)> = None;
        for m in p.symmetric_move_classes() {
            let Ok((c, e)) = p.resolve(&m) else { continue };
            let mine = p.graph(c, Player::P1);
            if !(mine.contains_vertex(e.lo()) || mine.contains_vertex(e.hi())) {
                continue;
            }
            let q = p.apply_move(&m).expect("class applies");
            if !winning_edges(&q, Player::P2).is_empty() {
                continue;
            }
            let replies = q.symmetric_move_classes();
            let mut good = 0;
            for r in &replies {
                let s = q.apply_move(r).expect("class applies");
                let ok = !winning_edges(&s, Player::P1).is_empty()
                    || (winning_edges(&s, Player::P2).is_empty() && find_forced_line(&s).is_some());
                if !ok {
                    break;
                }
                good += 1;
            }
            if good == replies.len() {
                return Some(StrategyDecision::new(m, "quiet"));
            }
            if best.is_none_or(|(g, _)| good > g) {
                best = Some((good, m));
            }
        }
        best.map(|(_, m)| StrategyDecision::new(m, "quiet"))
    }
}

impl Strategy for P1K23 {
    fn id(&self) -> String {
        "p1-k23".into()
    }

    fn role(&self) -> Player {
        Player::P1
    }

    fn decide(&mut self, p: &Position) -> Result<StrategyDecision, GameError> {
        if let Some(&(c, e)) = winning_edges(p, Player::P1).first() {
            return Ok(StrategyDecision::new(edge_move(p, c, e), "win"));
        }
        if let Some(&(c, e)) = winning_edges(p, Player::P2).first() {
            self.node = None;
            self.line = None;
            return Ok(StrategyDecision::new(edge_move(p, c, e), "block"));
        }
        if let Some(d) = self.tree_move(p) {
            return Ok(d);
        }
        if let Some(d) = self.forced(p) {
            return Ok(d);
        }
        if let Some(d) = self.prelude(p) {
            return Ok(d);
        }
        self.quiet(p)
            .ok_or_else(|| GameError::StrategyUndefined("no move for p1-k23".into()))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BoardKind, BoardSpec};

    fn reply(s: &mut P1K23, p: &Position, r: (Component, u32, u32)) -> (StrategyDecision, Position) {
        let d = s.decide(p).unwrap();
        let q = p.apply_move(&d.mv).unwrap();
        let m = q.move_for_edge(r.0, r.1, r.2).unwrap();
        (d, q.apply_move(&m).unwrap())
    }

    #[test]
    fn opening_follows_the_left_branch() {
        let mut s = P1K23::new();
        let p = Position::new(BoardSpec::finite(BoardKind::Double, 60));
        let (d, p) = reply(&mut s, &p, (B1, 2, 3));
        assert_eq!((d.mv, d.rationale.as_str()), (Move::fresh_pair(B1), "fig4:root"));
        let d = s.decide(&p).unwrap();
        assert_eq!(d.rationale, "fig4:left");
        assert_eq!(d.mv, Move::fresh_from(B1, 0));
    }

    #[test]
    fn touching_reply_goes_right_and_isomorphic_replies_agree() {
        for touch in [(B1, 0, 2), (B1, 1, 2)] {
            let mut s = P1K23::new();
            let p = Position::new(BoardSpec::finite(BoardKind::Double, 60));
            let (_, p) = reply(&mut s, &p, touch);
            let d = s.decide(&p).unwrap();
            assert_eq!(d.rationale, "fig4:right");
            // a is the shared vertex whichever endpoint P2 touched
            assert_eq!(d.mv.a, VertexRef::Used(touch.1));
        }
    }

    #[test]
    fn reply_in_other_component_counts_as_disjoint() {
        let mut s = P1K23::new();
        let p = Position::new(BoardSpec::finite(BoardKind::Double, 60));
        let (_, p) = reply(&mut s, &p, (Component::Second, 0, 1));
        assert_eq!(s.decide(&p).unwrap().rationale, "fig4:left");
    }
}
