// SPDX-License-Identifier: Apache-2.0

//! Subgraph (not induced) containment.

use std::collections::BTreeMap;

use super::graph::{SmallGraph, Vertex};

pub(crate) type Mask = u128;
pub(crate) const MAX_VERTICES: usize = Mask::BITS as usize;

/// Graph compacted onto indices `0..n` with bitmask adjacency.
#[derive(Clone, Debug)]
pub(crate) struct BitGraph {
    pub ids: Vec<Vertex>,
    pub adj: Vec<Mask>,
}

impl BitGraph {
    pub fn new(g: &SmallGraph) -> Self {
        let ids: Vec<Vertex> = g.vertices().into_iter().collect();
        assert!(ids.len() <= MAX_VERTICES, "graph exceeds {MAX_VERTICES} vertices");
        let index = |v: Vertex| ids.binary_search(&v).expect("endpoint is a vertex");
        let mut adj = vec![0 as Mask; ids.len()];
        for e in g.edges() {
            let (a, b) = (index(e.lo()), index(e.hi()));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        BitGraph { ids, adj }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.adj[i].count_ones()
    }
}

/// Order pattern vertices so that, inside each connected piece, every vertex
/// after the first has an earlier neighbour. Pieces start at a maximum-degree
/// vertex.
fn search_order(h: &BitGraph) -> Vec<usize> {
    let n = h.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| (h.degree(i), std::cmp::Reverse(i)))
            .expect("unplaced vertex exists");
        placed[start] = true;
        order.push(start);
        loop {
            // next: unplaced vertex with most placed neighbours, then highest degree
            let mut best: Option<(u32, u32, usize)> = None;
            for i in (0..n).filter(|&i| !placed[i]) {
                let back = order.iter().filter(|&&j| h.adj[i] >> j & 1 == 1).count() as u32;
                if back == 0 {
                    continue;
                }
                let key = (back, h.degree(i), i);
                if best.is_none_or(|b| (key.0, key.1) > (b.0, b.1)) {
                    best = Some(key);
                }
            }
            match best {
                Some((_, _, i)) => {
                    placed[i] = true;
                    order.push(i);
                }
                None => break,
            }
        }
    }
    order
}

struct Matcher<'a, F> {
    g: &'a BitGraph,
    h: &'a BitGraph,
    order: Vec<usize>,
    image: Vec<usize>,
    /// Called on each complete embedding; returning true stops the search.
    on_found: F,
}

impl<F: FnMut(&[usize]) -> bool> Matcher<'_, F> {
    fn extend(&mut self, depth: usize, used: Mask) -> bool {
        if depth == self.order.len() {
            return (self.on_found)(&self.image);
        }
        let hv = self.order[depth];
        let need = self.h.degree(hv);
        let mut cand: Mask = if self.g.len() == MAX_VERTICES {
            !0
        } else {
            (1 << self.g.len()) - 1
        };
        for &prev in &self.order[..depth] {
            if self.h.adj[hv] >> prev & 1 == 1 {
                cand &= self.g.adj[self.image[prev]];
            }
        }
        cand &= !used;
        while cand != 0 {
            let gv = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if self.g.degree(gv) < need {
                continue;
            }
            self.image[hv] = gv;
            if self.extend(depth + 1, used | 1 << gv) {
                return true;
            }
        }
        false
    }
}

/// True iff `h` is isomorphic to a (not necessarily induced) subgraph of `g`.
pub fn contains_pattern(g: &SmallGraph, h: &SmallGraph) -> bool {
    if h.is_empty() {
        return true;
    }
    if h.edge_count() > g.edge_count() {
        return false;
    }
    let gb = BitGraph::new(g);
    let hb = BitGraph::new(h);
    contains_bits(&gb, &hb)
}

pub(crate) fn contains_bits(gb: &BitGraph, hb: &BitGraph) -> bool {
    search_bits(gb, hb, |_| true)
}

fn search_bits<F: FnMut(&[usize]) -> bool>(gb: &BitGraph, hb: &BitGraph, on_found: F) -> bool {
    if hb.len() > gb.len() {
        return false;
    }
    let mut gdeg: Vec<u32> = (0..gb.len()).map(|i| gb.degree(i)).collect();
    let mut hdeg: Vec<u32> = (0..hb.len()).map(|i| hb.degree(i)).collect();
    gdeg.sort_unstable_by(|a, b| b.cmp(a));
    hdeg.sort_unstable_by(|a, b| b.cmp(a));
    if hdeg.iter().zip(&gdeg).any(|(h, g)| h > g) {
        return false;
    }
    let mut m = Matcher {
        g: gb,
        h: hb,
        order: search_order(hb),
        image: vec![0; hb.len()],
        on_found,
    };
    m.extend(0, 0)
}

/// Visits embeddings of `h` into `g` as maps from `h`-vertices to
/// `g`-vertices until `visit` returns true. Returns whether it stopped early.
pub fn for_each_embedding<F>(g: &SmallGraph, h: &SmallGraph, mut visit: F) -> bool
where
    F: FnMut(&BTreeMap<Vertex, Vertex>) -> bool,
{
    if h.is_empty() || h.edge_count() > g.edge_count() {
        return false;
    }
    let gb = BitGraph::new(g);
    let hb = BitGraph::new(h);
    search_bits(&gb, &hb, |image| {
        let map: BTreeMap<Vertex, Vertex> = image
            .iter()
            .enumerate()
            .map(|(i, &gi)| (hb.ids[i], gb.ids[gi]))
            .collect();
        visit(&map)
    })
}

/// The first embedding of `h` into `g` found by the search, if any.
pub fn find_embedding(g: &SmallGraph, h: &SmallGraph) -> Option<BTreeMap<Vertex, Vertex>> {
    let mut found = None;
    for_each_embedding(g, h, |m| {
        found = Some(m.clone());
        true
    });
    found
}

/// Fast test for `K_{2,t}(s)`: some ordered pair `(u, v)` has at least `t`
/// common neighbours and `u` has at least `t + s` neighbours besides `v`.
pub fn contains_k2ts(g: &SmallGraph, t: u32, s: u32) -> bool {
    if g.edge_count() < (2 * t + s) as usize {
        return false;
    }
    contains_k2ts_bits(&BitGraph::new(g), t, s)
}

pub(crate) fn contains_k2ts_bits(gb: &BitGraph, t: u32, s: u32) -> bool {
    let n = gb.len();
    for u in 0..n {
        let du = gb.degree(u);
        if du < t + s {
            continue;
        }
        for v in 0..n {
            if u == v {
                continue;
            }
            let adjacent = gb.adj[u] >> v & 1 == 1;
            if du - adjacent as u32 >= t + s && (gb.adj[u] & gb.adj[v]).count_ones() >= t {
                return true;
            }
        }
    }
    false
}

/// A pair of vertices `(u, v)` realizing `K_{2,t}(s)` with `u` as the
/// pendant-carrying core, if any.
pub fn find_k2ts_cores(g: &SmallGraph, t: u32, s: u32) -> Option<(Vertex, Vertex)> {
    let gb = BitGraph::new(g);
    let n = gb.len();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let adjacent = gb.adj[u] >> v & 1 == 1;
            if gb.degree(u) - adjacent as u32 >= t + s && (gb.adj[u] & gb.adj[v]).count_ones() >= t {
                return Some((gb.ids[u], gb.ids[v]));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphkit::pattern::{build_pattern, path_graph, PatternSpec};

    fn k2ts(t: u32, s: u32) -> SmallGraph {
        build_pattern(&PatternSpec::k2ts(t, s).unwrap()).unwrap()
    }

    #[test]
    fn four_cycle_contains_two_path() {
        let c4 = build_pattern(&PatternSpec::cycle(4).unwrap()).unwrap();
        assert!(contains_pattern(&c4, &path_graph(2)));
        assert!(!contains_pattern(&c4, &path_graph(4)));
    }

    #[test]
    fn identity_containment() {
        assert!(contains_pattern(&k2ts(3, 0), &k2ts(3, 0)));
    }

    #[test]
    fn fewer_edges_never_contain() {
        assert!(!contains_pattern(&k2ts(3, 2), &k2ts(4, 1)));
    }

    #[test]
    fn k2ts_fast_path_examples() {
        assert!(contains_k2ts(&k2ts(3, 0), 2, 1));
        assert!(!contains_k2ts(&k2ts(3, 2), 4, 1));
        assert!(contains_k2ts(&k2ts(3, 2), 3, 2));
        assert!(!contains_k2ts(&k2ts(3, 2), 3, 3));
    }

    #[test]
    fn pendant_may_not_reuse_second_core() {
        // K_{2,2} plus the edge between its cores: u has 3 neighbours but one is v.
        let g = SmallGraph::from_edges([(0, 2), (0, 3), (1, 2), (1, 3), (0, 1)]).unwrap();
        assert!(!contains_k2ts(&g, 2, 1));
        assert!(!contains_pattern(&g, &k2ts(2, 1)));
    }

    #[test]
    fn disconnected_patterns() {
        let two_edges = SmallGraph::from_edges([(0, 1), (2, 3)]).unwrap();
        assert!(!contains_pattern(&path_graph(2), &two_edges));
        assert!(contains_pattern(&path_graph(3), &two_edges));
    }
}
