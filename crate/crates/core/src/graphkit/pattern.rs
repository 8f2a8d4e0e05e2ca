// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::graph::{SmallGraph, Vertex};
use crate::error::GameError;

/// A target description.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternSpec {
    /// `K_{2,t}` plus `s` pendant edges hanging off the first core.
    K2ts { t: u32, s: u32 },
    Cycle { len: u32 },
    Explicit(SmallGraph),
}

impl PatternSpec {
    pub fn k2ts(t: u32, s: u32) -> Result<Self, GameError> {
        let spec = PatternSpec::K2ts { t, s };
        spec.validate()?;
        Ok(spec)
    }

    pub fn cycle(len: u32) -> Result<Self, GameError> {
        let spec = PatternSpec::Cycle { len };
        spec.validate()?;
        Ok(spec)
    }

    pub fn explicit(g: SmallGraph) -> Result<Self, GameError> {
        let spec = PatternSpec::Explicit(g);
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), GameError> {
        match self {
            PatternSpec::K2ts { t, .. } if *t < 1 => {
                Err(GameError::InvalidPattern(format!("k2ts needs t >= 1, got {t}")))
            }
            PatternSpec::Cycle { len } if *len < 3 => {
                Err(GameError::InvalidPattern(format!("cycle needs length >= 3, got {len}")))
            }
            PatternSpec::Explicit(g) if g.is_empty() => {
                Err(GameError::InvalidPattern("explicit pattern has no edges".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            PatternSpec::K2ts { t, s } => (2 * t + s) as usize,
            PatternSpec::Cycle { len } => *len as usize,
            PatternSpec::Explicit(g) => g.edge_count(),
        }
    }

    /// Parses `k2ts:t,s`, `cycle:L`, `file:PATH`, or the inline form
    /// `graph:u-v,u-v,...` used when records carry explicit targets.
    pub fn parse(s: &str) -> Result<Self, GameError> {
        let bad = || GameError::InvalidPattern(format!("cannot parse pattern {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "k2ts" => {
                let (t, sv) = rest.split_once(',').ok_or_else(bad)?;
                let t: i64 = t.trim().parse().map_err(|_| bad())?;
                let sv: i64 = sv.trim().parse().map_err(|_| bad())?;
                if t < 1 || sv < 0 {
                    return Err(GameError::InvalidPattern(format!(
                        "k2ts needs t >= 1 and s >= 0, got t={t}, s={sv}"
                    )));
                }
                PatternSpec::k2ts(t as u32, sv as u32)
            }
            "cycle" => {
                let len: i64 = rest.trim().parse().map_err(|_| bad())?;
                if len < 3 {
                    return Err(GameError::InvalidPattern(format!("cycle needs length >= 3, got {len}")));
                }
                PatternSpec::cycle(len as u32)
            }
            "file" => {
                let text = std::fs::read_to_string(rest)
                    .map_err(|e| GameError::InvalidPattern(format!("reading {rest}: {e}")))?;
                PatternSpec::explicit(SmallGraph::parse_edge_list(&text)?)
            }
            "graph" => {
                let mut pairs = Vec::new();
                for tok in rest.split(',').filter(|t| !t.trim().is_empty()) {
                    let (u, v) = tok.trim().split_once('-').ok_or_else(bad)?;
                    pairs.push((u.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
                }
                PatternSpec::explicit(SmallGraph::from_edges(pairs)?)
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::K2ts { t, s } => write!(f, "k2ts:{t},{s}"),
            PatternSpec::Cycle { len } => write!(f, "cycle:{len}"),
            PatternSpec::Explicit(g) => {
                let parts: Vec<String> = g.edges().map(|e| format!("{}-{}", e.lo(), e.hi())).collect();
                write!(f, "graph:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for PatternSpec {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternSpec::parse(s)
    }
}

impl Serialize for PatternSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PatternSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        PatternSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Vertex ids used by [`build_pattern`] for `K_{2,t}(s)`.
pub mod k2ts_ids {
    use super::Vertex;

    pub const A1: Vertex = 0;
    pub const A2: Vertex = 1;

    pub fn b(j: u32) -> Vertex {
        1 + j
    }

    pub fn c(t: u32, k: u32) -> Vertex {
        1 + t + k
    }
}

/// Materializes a pattern. `K_{2,t}(s)` uses a1=0, a2=1, b_j=1+j (j=1..t),
/// c_k=1+t+k (k=1..s); a cycle uses 0..L in order.
pub fn build_pattern(spec: &PatternSpec) -> Result<SmallGraph, GameError> {
    spec.validate()?;
    match spec {
        PatternSpec::K2ts { t, s } => {
            use k2ts_ids::*;
            let mut pairs = Vec::new();
            for j in 1..=*t {
                pairs.push((A1, b(j)));
                pairs.push((A2, b(j)));
            }
            for k in 1..=*s {
                pairs.push((A1, c(*t, k)));
            }
            SmallGraph::from_edges(pairs)
        }
        PatternSpec::Cycle { len } => {
            SmallGraph::from_edges((0..*len).map(|i| (i, (i + 1) % len)))
        }
        PatternSpec::Explicit(g) => Ok(g.clone()),
    }
}

/// A path with `len` edges on vertices `0..=len`.
pub fn path_graph(len: u32) -> SmallGraph {
    SmallGraph::from_edges((0..len).map(|i| (i, i + 1))).expect("path is simple")
}

/// The star `K_{1,k}` centred at 0.
pub fn star_graph(k: u32) -> SmallGraph {
    SmallGraph::from_edges((1..=k).map(|i| (0, i))).expect("star is simple")
}

pub fn complete_graph(n: u32) -> SmallGraph {
    SmallGraph::from_edges((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("clique is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k22_is_four_cycle() {
        let g = build_pattern(&PatternSpec::k2ts(2, 0).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.vertices().iter().all(|&v| g.degree(v) == 2));
    }

    #[test]
    fn k24_1_has_nine_edges() {
        let g = build_pattern(&PatternSpec::k2ts(4, 1).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(PatternSpec::K2ts { t: 4, s: 1 }.edge_count(), 9);
    }

    #[test]
    fn k23_2_matches_key_graph_shape() {
        let g = build_pattern(&PatternSpec::k2ts(3, 2).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 8);
        let mut degs: Vec<usize> = g.vertices().iter().map(|&v| g.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 3, 5]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PatternSpec::k2ts(0, 1).is_err());
        assert!(PatternSpec::cycle(2).is_err());
        assert!(PatternSpec::parse("k2ts:3,-1").is_err());
        assert!(PatternSpec::parse("k2ts:0,1").is_err());
        assert!(PatternSpec::parse("cycle:2").is_err());
        assert!(PatternSpec::parse("wheel:5").is_err());
        assert!(PatternSpec::explicit(SmallGraph::new()).is_err());
    }

    #[test]
    fn string_forms_round_trip() {
        for s in ["k2ts:4,1", "cycle:5", "graph:0-1,1-2"] {
            assert_eq!(PatternSpec::parse(s).unwrap().to_string(), s);
        }
    }
}
