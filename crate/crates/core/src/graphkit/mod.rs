// SPDX-License-Identifier: Apache-2.0

//! Small-graph toolkit: edge-set graphs, target patterns, containment and
//! canonical forms.

mod canon;
mod family;
mod graph;
mod pattern;
mod subgraph;

pub use canon::{are_isomorphic, canonical_key, find_isomorphism, uncolored_key, CanonicalKey};
pub(crate) use canon::canonical_labeling;
pub use family::{deficiency_family, for_each_subset};
pub use graph::{Edge, SmallGraph, Vertex};
pub use pattern::{build_pattern, complete_graph, k2ts_ids, path_graph, star_graph, PatternSpec};
pub use subgraph::{contains_k2ts, contains_pattern, find_embedding, find_k2ts_cores, for_each_embedding};
pub(crate) use subgraph::{contains_bits, contains_k2ts_bits, BitGraph};
