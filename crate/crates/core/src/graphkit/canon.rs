// SPDX-License-Identifier: Apache-2.0

//! Exact canonical forms for small edge-colored graphs.
//!
//! Each connected piece is labeled by individualization-refinement: an
//! equitable partition is computed by iterated color refinement, the first
//! non-singleton cell is split by individualizing each of its vertices in
//! turn, and the lexicographically smallest leaf encoding wins. Automorphisms
//! discovered at equal leaves prune sibling branches in the same orbit. The
//! whole-graph form is the sorted list of piece forms, so disjoint copies of
//! the same piece cost nothing extra.

use std::collections::BTreeMap;
use std::fmt;

use super::graph::{Edge, SmallGraph, Vertex};

/// Canonical form of an edge-colored graph. Equal keys iff the graphs are
/// color-preservingly isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalKey(bytes)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// A connected piece on local indices `0..n`; `adj[i*n+j]` is 0 for no edge,
/// otherwise 1 + color.
struct Piece {
    n: usize,
    adj: Vec<u8>,
    ids: Vec<Vertex>,
}

impl Piece {
    fn at(&self, i: usize, j: usize) -> u8 {
        self.adj[i * self.n + j]
    }
}

struct Labeler<'a> {
    piece: &'a Piece,
    first: Option<(Vec<u8>, Vec<usize>)>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> Labeler<'a> {
    fn refine(&self, cells: &mut [u16]) {
        let n = self.piece.n;
        let mut distinct = count_distinct(cells);
        let mut sigs: Vec<(u16, Vec<(u16, u8)>)> = vec![(0, Vec::new()); n];
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            for v in 0..n {
                let (head, nbrs) = &mut sigs[v];
                *head = cells[v];
                nbrs.clear();
                for w in 0..n {
                    let c = self.piece.at(v, w);
                    if c != 0 {
                        nbrs.push((cells[w], c));
                    }
                }
                nbrs.sort_unstable();
            }
            idx.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut start = 0usize;
            for pos in 0..n {
                if pos > 0 && sigs[idx[pos]] != sigs[idx[pos - 1]] {
                    start = pos;
                }
                cells[idx[pos]] = start as u16;
            }
            let now = count_distinct(cells);
            if now == distinct {
                break;
            }
            distinct = now;
        }
    }

    fn leaf(&mut self, cells: &[u16]) {
        let n = self.piece.n;
        let mut order = vec![0usize; n];
        for v in 0..n {
            order[cells[v] as usize] = v;
        }
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                code.push(self.piece.at(order[i], order[j]));
            }
        }
        if let Some((fcode, forder)) = &self.first {
            if *fcode == code {
                self.autos.push(automorphism(forder, &order));
                return;
            }
        } else {
            self.first = Some((code.clone(), order.clone()));
        }
        match &self.best {
            Some((bcode, border)) if *bcode == code => {
                let a = automorphism(border, &order);
                self.autos.push(a);
            }
            Some((bcode, _)) if *bcode < code => {}
            _ => self.best = Some((code, order)),
        }
    }

    fn search(&mut self, mut cells: Vec<u16>, prefix: &mut Vec<usize>) {
        self.refine(&mut cells);
        let n = self.piece.n;
        // first non-singleton cell
        let mut sizes = vec![0u16; n];
        for &c in &cells {
            sizes[c as usize] += 1;
        }
        let target = match (0..n).find(|&c| sizes[c] > 1) {
            None => return self.leaf(&cells),
            Some(c) => c as u16,
        };
        let members: Vec<usize> = (0..n).filter(|&v| cells[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if !tried.is_empty() {
                let orbit = self.orbits_fixing(prefix);
                if tried.iter().any(|&u| find(&orbit, u) == find(&orbit, v)) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = cells.clone();
            for &w in &members {
                if w != v {
                    child[w] = target + 1;
                }
            }
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    /// Union-find parent array for orbits of the group generated by the known
    /// automorphisms that fix every vertex of `prefix`.
    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.piece.n).collect();
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] == p) {
                for (v, &w) in a.iter().enumerate() {
                    let (rv, rw) = (find(&parent, v), find(&parent, w));
                    if rv != rw {
                        parent[rv.max(rw)] = rv.min(rw);
                    }
                }
            }
        }
        parent
    }
}

fn find(parent: &[usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

fn count_distinct(cells: &[u16]) -> usize {
    let mut seen = vec![false; cells.len()];
    let mut k = 0;
    for &c in cells {
        if !seen[c as usize] {
            seen[c as usize] = true;
            k += 1;
        }
    }
    k
}

/// Maps `from[i]` to `to[i]`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut a = vec![0; from.len()];
    for (f, t) in from.iter().zip(to) {
        a[*f] = *t;
    }
    a
}

/// Canonical code and canonical vertex order of one connected piece.
fn label_piece(piece: &Piece) -> (Vec<u8>, Vec<Vertex>) {
    let n = piece.n;
    let mut header = (n as u16).to_be_bytes().to_vec();
    if n == 1 {
        return (header, piece.ids.clone());
    }
    let mut lab = Labeler {
        piece,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    lab.search(vec![0; n], &mut Vec::new());
    let (code, order) = lab.best.expect("search reaches a leaf");
    header.extend(code);
    (header, order.into_iter().map(|i| piece.ids[i]).collect())
}

/// Splits a colored edge set into connected pieces.
fn pieces(edges: &BTreeMap<Edge, u8>) -> Vec<Piece> {
    let g: SmallGraph = edges.keys().copied().collect();
    let adj = g.adjacency();
    let mut seen: BTreeMap<Vertex, bool> = adj.keys().map(|&v| (v, false)).collect();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if seen[&start] {
            continue;
        }
        let mut ids = vec![start];
        seen.insert(start, true);
        let mut i = 0;
        while i < ids.len() {
            for &w in &adj[&ids[i]] {
                if !seen[&w] {
                    seen.insert(w, true);
                    ids.push(w);
                }
            }
            i += 1;
        }
        ids.sort_unstable();
        let n = ids.len();
        let mut m = vec![0u8; n * n];
        for (a, &u) in ids.iter().enumerate() {
            for &w in &adj[&u] {
                let b = ids.binary_search(&w).expect("same piece");
                let c = edges[&Edge::new(u, w)];
                m[a * n + b] = c + 1;
            }
        }
        out.push(Piece { n, adj: m, ids });
    }
    out
}

/// Canonical code plus a canonical vertex order (position `i` of the order
/// is the vertex placed at canonical index `i`).
pub(crate) fn canonical_labeling(edges: &BTreeMap<Edge, u8>) -> (CanonicalKey, Vec<Vertex>) {
    let mut labeled: Vec<(Vec<u8>, Vec<Vertex>)> = pieces(edges).iter().map(label_piece).collect();
    labeled.sort_by(|a, b| a.0.cmp(&b.0));
    let mut code = Vec::new();
    let mut order = Vec::new();
    for (c, o) in labeled {
        code.extend((c.len() as u32).to_be_bytes());
        code.extend(c);
        order.extend(o);
    }
    (CanonicalKey(code), order)
}

fn colored(g: &SmallGraph, edge_colors: &BTreeMap<Edge, u8>) -> BTreeMap<Edge, u8> {
    g.edges().map(|e| (e, edge_colors.get(&e).copied().unwrap_or(0))).collect()
}

/// Canonical key of `g` whose edges carry the given colors (absent entries
/// are color 0). Invariant under vertex relabeling.
pub fn canonical_key(g: &SmallGraph, edge_colors: &BTreeMap<Edge, u8>) -> CanonicalKey {
    debug_assert!(edge_colors.keys().all(|e| g.contains_edge(*e)));
    canonical_labeling(&colored(g, edge_colors)).0
}

pub fn uncolored_key(g: &SmallGraph) -> CanonicalKey {
    canonical_key(g, &BTreeMap::new())
}

pub fn are_isomorphic(g1: &SmallGraph, g2: &SmallGraph) -> bool {
    g1.edge_count() == g2.edge_count() && uncolored_key(g1) == uncolored_key(g2)
}

/// A color-preserving isomorphism from the first colored graph onto the
/// second, if one exists.
pub fn find_isomorphism(a: &BTreeMap<Edge, u8>, b: &BTreeMap<Edge, u8>) -> Option<BTreeMap<Vertex, Vertex>> {
    if a.len() != b.len() {
        return None;
    }
    let (ka, oa) = canonical_labeling(a);
    let (kb, ob) = canonical_labeling(b);
    (ka == kb).then(|| oa.into_iter().zip(ob).collect())
}
