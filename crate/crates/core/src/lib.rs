// SPDX-License-Identifier: Apache-2.0

//! Engine for strong Ramsey games on one or two cliques: graph toolkit,
//! boards, referee, scripted strategies, a bounded exact solver with
//! symmetry reduction, and a match arena with a session protocol.

pub mod error;
pub mod graphkit;

pub use error::{GameError, Result};
pub mod board;
pub mod referee;
pub mod strategies;
pub mod solver;
pub mod arena;
