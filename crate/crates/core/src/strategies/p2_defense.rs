// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::{Strategy, StrategyDecision};
use crate::board::{Component, Move, Player, Position};
use crate::error::GameError;
use crate::graphkit::{
    build_pattern, deficiency_family, find_embedding, k2ts_ids, uncolored_key, CanonicalKey, Edge,
    PatternSpec, SmallGraph, Vertex,
};
use crate::referee::{is_star, winning_moves_with, Target};

const B1: Component = Component::First;
const B2: Component = Component::Second;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct P2DefenseOptions {
    /// Ablation switch: never run the pair defence in component 1.
    pub disable_case2: bool,
}

/// Core pair of P1's component-1 graph and the not yet defended vertices
/// adjacent to exactly one core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Core {
    pub x: Vertex,
    pub y: Vertex,
    pub remaining_b: BTreeSet<Vertex>,
}

/// P2 on two cliques against `K_{2,t+1}(t-2)`: win if possible, defend a
/// near-copy in component 1, otherwise build `K_{2,t}(t-1)` in component 2
/// and keep extending it with threats.
#[derive(Clone, Debug)]
pub struct P2Defense {
    t: u32,
    opts: P2DefenseOptions,
    target: Target,
    host: SmallGraph,
    family: Vec<CanonicalKey>,
    core: Option<Case2Core>,
    u: Option<Vertex>,
    xs: Vec<Vertex>,
    v: Option<Vertex>,
    v_edges: u32,
    star_mode: bool,
}

impl P2Defense {
    pub fn new(t: u32) -> Result<Self, GameError> {
        Self::with_options(t, P2DefenseOptions::default())
    }

    pub fn with_options(t: u32, opts: P2DefenseOptions) -> Result<Self, GameError> {
        let family = deficiency_family(t)?.iter().map(uncolored_key).collect();
        let spec = PatternSpec::k2ts(t + 1, t - 2)?;
        Ok(P2Defense {
            t,
            opts,
            target: Target::new(&spec)?,
            host: build_pattern(&spec)?,
            family,
            core: None,
            u: None,
            xs: Vec::new(),
            v: None,
            v_edges: 0,
            star_mode: false,
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn case2_core(&self) -> Option<&Case2Core> {
        self.core.as_ref()
    }

    /// `(u, v, x_1..x_{2t-1})` once the component-2 build has chosen `v`.
    pub fn build_vertices(&self) -> Option<(Vertex, Vertex, &[Vertex])> {
        Some((self.u?, self.v?, &self.xs))
    }

    /// The build is complete and P2 is extending it.
    pub fn extending(&self) -> bool {
        self.v.is_some() && self.v_edges >= self.t
    }

    fn identify_core(&self, g: &SmallGraph) -> Option<Case2Core> {
        if !self.family.contains(&uncolored_key(g)) {
            return None;
        }
        let phi = find_embedding(&self.host, g)?;
        let pre = |h: Vertex| phi.iter().find(|(_, &img)| img == h).map(|(&v, _)| v);
        let (x, y) = (pre(k2ts_ids::A1)?, pre(k2ts_ids::A2)?);
        let nx = g.neighbors(x);
        let ny = g.neighbors(y);
        let remaining_b = nx.symmetric_difference(&ny).copied().collect();
        Some(Case2Core { x, y, remaining_b })
    }

    fn case2(&mut self, p: &Position) -> Option<StrategyDecision> {
        if self.opts.disable_case2 {
            return None;
        }
        let t = self.t as usize;
        let g1 = p.graph(B1, Player::P1);
        if self.core.is_none() {
            if p.moves_made(Player::P1) != 2 * t + 1 || g1.edge_count() != 2 * t + 1 {
                return None;
            }
            let mut core = self.identify_core(g1)?;
            let w = *core.remaining_b.iter().next()?;
            let e = missing_core_edge(&core, g1, w);
            core.remaining_b.remove(&w);
            self.core = Some(core);
            return Some(decide_edge(p, B1, e, "case2a"));
        }
        let last = p.history().last()?;
        if last.player != Player::P1 || last.component != B1 {
            return None;
        }
        let core = self.core.as_mut().expect("checked above");
        let (x, y) = (core.x, core.y);
        let (a, b) = last.edge.endpoints();
        let w = match (a, b) {
            _ if last.edge == Edge::new(x, y) => return None,
            (c, w) | (w, c) if c == x || c == y => w,
            _ => return None,
        };
        if core.remaining_b.remove(&w) {
            let w2 = core
                .remaining_b
                .iter()
                .copied()
                .find(|&w2| p.is_unclaimed(B1, missing_core_edge(core, g1, w2)))?;
            let e = missing_core_edge(core, g1, w2);
            core.remaining_b.remove(&w2);
            return Some(decide_edge(p, B1, e, "case2c"));
        }
        let other = if last.edge.contains(x) { Edge::new(y, w) } else { Edge::new(x, w) };
        if p.is_unclaimed(B1, other) {
            return Some(decide_edge(p, B1, other, "case2b"));
        }
        None
    }

    fn case3(&mut self, p: &Position) -> Option<StrategyDecision> {
        let t = self.t as usize;
        let fresh = p.materialized(B2);
        let Some(u) = self.u else {
            self.u = Some(fresh);
            self.xs.push(fresh + 1);
            return Some(StrategyDecision::new(Move::fresh_pair(B2), "case3a"));
        };
        if self.xs.len() < 2 * t - 1 {
            self.xs.push(fresh);
            return Some(StrategyDecision::new(Move::fresh_from(B2, u), "case3a"));
        }
        if self.v_edges >= self.t {
            return None;
        }
        let g2 = p.graph(B2, Player::P1);
        if self.v.is_none() {
            self.star_mode = is_star(g2);
        }
        let v = self.v.unwrap_or(fresh);
        let star = self.star_mode;
        let pick = self
            .xs
            .iter()
            .copied()
            .filter(|&x| self.v.is_none() || p.is_unclaimed(B2, Edge::new(v, x)))
            .min_by_key(|&x| {
                let d = g2.degree(x);
                if star {
                    ((d != 1) as usize, 0, x)
                } else {
                    (0, usize::MAX - d, x)
                }
            })?;
        let mv = match self.v {
            None => {
                self.v = Some(fresh);
                Move::fresh_from(B2, pick)
            }
            Some(v) => Move::used(B2, v, pick),
        };
        self.v_edges += 1;
        Some(StrategyDecision::new(mv, "case3b"))
    }

    /// Threat extension on the finished build; also the totalization rule.
    fn case4(&self, p: &Position, tag: &str) -> Result<StrategyDecision, GameError> {
        let (Some(u), Some(v)) = (self.u, self.v) else {
            return Err(GameError::StrategyUndefined("no build to extend".into()));
        };
        let g2 = p.graph(B2, Player::P1);
        let nu = g2.neighbors(u);
        let t = self.t as usize;
        let u_is_core = g2
            .vertices()
            .into_iter()
            .filter(|&z| z != u)
            .any(|z| nu.intersection(&g2.neighbors(z)).count() >= t);
        let from = if u_is_core { u } else { v };
        Ok(StrategyDecision::new(Move::fresh_from(B2, from), tag))
    }
}

/// The core edge at `w` that P1 does not hold.
fn missing_core_edge(core: &Case2Core, g1: &SmallGraph, w: Vertex) -> Edge {
    if g1.has_edge(core.x, w) {
        Edge::new(core.y, w)
    } else {
        Edge::new(core.x, w)
    }
}

fn decide_edge(p: &Position, c: Component, e: Edge, tag: &str) -> StrategyDecision {
    let mv = p.move_for_edge(c, e.lo(), e.hi()).expect("edge on used vertices");
    StrategyDecision::new(mv, tag)
}

impl Strategy for P2Defense {
    fn id(&self) -> String {
        format!("p2-defense:t={}", self.t)
    }

    fn role(&self) -> Player {
        Player::P2
    }

    fn decide(&mut self, p: &Position) -> Result<StrategyDecision, GameError> {
        if let Some(&m) = winning_moves_with(p, Player::P2, &self.target).first() {
            return Ok(StrategyDecision::new(m, "case1"));
        }
        if let Some(d) = self.case2(p) {
            return Ok(d);
        }
        if let Some(d) = self.case3(p) {
            return Ok(d);
        }
        if self.extending() {
            self.case4(p, "case4")
        } else {
            self.case4(p, "fallback")
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
