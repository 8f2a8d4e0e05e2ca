// SPDX-License-Identifier: Apache-2.0

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Strategy, StrategyDecision};
use crate::board::{Player, Position};
use crate::error::GameError;

/// Uniform choice among the orbit representatives of legal moves, so its
/// behaviour does not depend on the board size.
#[derive(Clone, Debug)]
pub struct RandomAgent {
    role: Player,
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomAgent {
    pub fn new(role: Player, seed: u64) -> Self {
        RandomAgent {
            role,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Strategy for RandomAgent {
    fn id(&self) -> String {
        format!("random:seed={}", self.seed)
    }

    fn role(&self) -> Player {
        self.role
    }

    fn decide(&mut self, p: &Position) -> Result<StrategyDecision, GameError> {
        let classes = p.symmetric_move_classes();
        if classes.is_empty() {
            return Err(GameError::BoardExhausted);
        }
        let i = self.rng.gen_range(0..classes.len());
        Ok(StrategyDecision::new(classes[i], "random"))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}
