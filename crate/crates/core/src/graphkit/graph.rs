// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GameError;

pub type Vertex = u32;

/// Unordered vertex pair, always stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        Self::try_new(u, v).expect("loops are not edges")
    }

    pub fn try_new(u: Vertex, v: Vertex) -> Result<Self, GameError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(GameError::InvalidGraph(format!("loop at vertex {u}"))),
        }
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint opposite to `v`, if `v` is an endpoint.
    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.lo == v {
            Some(self.hi)
        } else if self.hi == v {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A simple graph given by its edge set. The vertex set is the union of the
/// edge endpoints, so isolated vertices cannot be represented.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SmallGraph {
    edges: BTreeSet<Edge>,
}

impl SmallGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<I: IntoIterator<Item = (Vertex, Vertex)>>(edges: I) -> Result<Self, GameError> {
        let mut g = SmallGraph::new();
        for (u, v) in edges {
            let e = Edge::try_new(u, v)?;
            if !g.edges.insert(e) {
                return Err(GameError::InvalidGraph(format!("duplicate edge {e}")));
            }
        }
        Ok(g)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.edges.contains(&Edge::new(u, v))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Returns false if the edge was already present.
    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: Edge) -> bool {
        self.edges.remove(&e)
    }

    pub fn with_edge(&self, e: Edge) -> SmallGraph {
        let mut g = self.clone();
        g.edges.insert(e);
        g
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.edges.iter().flat_map(|e| [e.lo, e.hi]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.edges.iter().any(|e| e.contains(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    pub fn adjacency(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.lo).or_default().insert(e.hi);
            adj.entry(e.hi).or_default().insert(e.lo);
        }
        adj
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.edges.iter().map(|e| e.hi).max()
    }

    /// Applies a vertex map to every endpoint. The map must be injective on
    /// the vertex set.
    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, f: F) -> SmallGraph {
        SmallGraph {
            edges: self.edges.iter().map(|e| Edge::new(f(e.lo), f(e.hi))).collect(),
        }
    }

    pub fn union(&self, other: &SmallGraph) -> SmallGraph {
        SmallGraph {
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    /// Parses the fixture format: one `u v` edge per line, `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<SmallGraph, GameError> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<Vertex, GameError> {
                tok.and_then(|t| t.parse().ok()).ok_or_else(|| {
                    GameError::InvalidGraph(format!("line {}: expected `u v`, got {raw:?}", lineno + 1))
                })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(GameError::InvalidGraph(format!("line {}: trailing tokens", lineno + 1)));
            }
            pairs.push((u, v));
        }
        SmallGraph::from_edges(pairs)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.lo, e.hi));
        }
        out
    }
}

impl FromIterator<Edge> for SmallGraph {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        SmallGraph {
            edges: iter.into_iter().collect(),
        }
    }
}

impl FromStr for SmallGraph {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SmallGraph::parse_edge_list(s)
    }
}

impl fmt::Display for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
