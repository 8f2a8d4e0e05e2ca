// SPDX-License-Identifier: Apache-2.0

//! Scripted agents. Each is a deterministic next-move function over its own
//! state and the current position, reporting which rule produced the move.

mod k23_lines;
mod p1_cycle;
mod p1_k23;
mod p2_defense;
mod random;
mod turan;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use p1_cycle::{CycleVariant, P1Cycle, P1CyclePhase};
pub use p1_k23::{K23Node, P1K23};
pub use p2_defense::{Case2Core, P2Defense, P2DefenseOptions};
pub use random::RandomAgent;
pub use turan::{is_two_color_critical, TuranGreedy, TuranPhase};

use crate::board::{Move, Player, Position};
use crate::error::GameError;
use crate::graphkit::PatternSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyDecision {
    #[serde(rename = "move")]
    pub mv: Move,
    pub rationale: String,
}

impl StrategyDecision {
    pub fn new(mv: Move, rationale: impl Into<String>) -> Self {
        StrategyDecision {
            mv,
            rationale: rationale.into(),
        }
    }
}

pub trait Strategy: Send {
    fn id(&self) -> String;

    /// The seat this agent plays.
    fn role(&self) -> Player;

    /// Next move for the position, which must have this agent as mover.
    fn decide(&mut self, p: &Position) -> Result<StrategyDecision, GameError>;

    fn box_clone(&self) -> Box<dyn Strategy>;
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Parsed strategy identifier as used on the command line and in records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyId {
    P2Defense { t: u32 },
    P1Cycle { len: u32 },
    P1K23,
    Turan(PatternSpec),
    Random { seed: u64 },
}

impl StrategyId {
    /// The seat the strategy is written for; `None` for seat-agnostic agents.
    pub fn natural_role(&self) -> Option<Player> {
        match self {
            StrategyId::P2Defense { .. } => Some(Player::P2),
            StrategyId::P1Cycle { .. } | StrategyId::P1K23 | StrategyId::Turan(_) => Some(Player::P1),
            StrategyId::Random { .. } => None,
        }
    }

    pub fn build(&self, role: Player) -> Result<Box<dyn Strategy>, GameError> {
        if let Some(r) = self.natural_role() {
            if r != role {
                return Err(GameError::InvalidStrategyId(format!("{self} plays {r}, not {role}")));
            }
        }
        Ok(match self {
            StrategyId::P2Defense { t } => Box::new(P2Defense::new(*t)?),
            StrategyId::P1Cycle { len } => Box::new(P1Cycle::new(*len)?),
            StrategyId::P1K23 => Box::new(P1K23::new()),
            StrategyId::Turan(h) => Box::new(TuranGreedy::new(h)?),
            StrategyId::Random { seed } => Box::new(RandomAgent::new(role, *seed)),
        })
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyId::P2Defense { t } => write!(f, "p2-defense:t={t}"),
            StrategyId::P1Cycle { len } => write!(f, "p1-cycle:{len}"),
            StrategyId::P1K23 => write!(f, "p1-k23"),
            StrategyId::Turan(h) => write!(f, "turan:{h}"),
            StrategyId::Random { seed } => write!(f, "random:seed={seed}"),
        }
    }
}

impl FromStr for StrategyId {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GameError::InvalidStrategyId(s.to_string());
        if s == "p1-k23" {
            return Ok(StrategyId::P1K23);
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "p2-defense" => {
                let t = rest.strip_prefix("t=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Ok(StrategyId::P2Defense { t })
            }
            "p1-cycle" => Ok(StrategyId::P1Cycle {
                len: rest.parse().map_err(|_| bad())?,
            }),
            "turan" => Ok(StrategyId::Turan(PatternSpec::parse(rest)?)),
            "random" => {
                let seed = rest.strip_prefix("seed=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Ok(StrategyId::Random { seed })
            }
            _ => Err(bad()),
        }
    }
}

/// Builds an agent from its id string for the given seat.
pub fn build_strategy(id: &str, role: Player) -> Result<Box<dyn Strategy>, GameError> {
    id.parse::<StrategyId>()?.build(role)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for s in ["p2-defense:t=3", "p1-cycle:5", "p1-k23", "turan:cycle:3", "random:seed=7"] {
            assert_eq!(s.parse::<StrategyId>().unwrap().to_string(), s);
        }
        assert!("p1-cycle".parse::<StrategyId>().is_err());
        assert!("random:7".parse::<StrategyId>().is_err());
    }

    #[test]
    fn seats_are_enforced() {
        assert!(build_strategy("p1-cycle:4", Player::P2).is_err());
        assert!(build_strategy("p2-defense:t=3", Player::P1).is_err());
        assert!(build_strategy("random:seed=1", Player::P2).is_ok());
    }
}
