// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::canon::uncolored_key;
use super::graph::{Edge, SmallGraph};
use super::pattern::{build_pattern, PatternSpec};
use crate::error::GameError;

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Isomorphism classes of graphs obtained from `K_{2,t+1}(t-2)` by deleting
/// `t-1` edges (vertices left isolated disappear). Classes are listed in
/// order of first appearance over lexicographically ordered deletions.
pub fn deficiency_family(t: u32) -> Result<Vec<SmallGraph>, GameError> {
    if t < 3 {
        return Err(GameError::InvalidPattern(format!("deficiency family needs t >= 3, got {t}")));
    }
    let full = build_pattern(&PatternSpec::k2ts(t + 1, t - 2)?)?;
    let edges: Vec<Edge> = full.edges().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for_each_subset(edges.len(), (t - 1) as usize, |drop| {
        let g: SmallGraph = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, e)| *e)
            .collect();
        if seen.insert(uncolored_key(&g)) {
            out.push(g);
        }
    });
    Ok(out)
}
