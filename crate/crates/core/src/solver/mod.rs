// SPDX-License-Identifier: Apache-2.0

//! Bounded exact solving over symmetry classes, and exhaustive checks of
//! scripted strategies.

mod verify;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use verify::{
    replay_trace, verify_p1, verify_p1_strategy, verify_p2, verify_p2_strategy, DecisionHook, Verdict, VerifyOptions,
    VerifyReport,
};

use crate::board::{Move, Position};
use crate::error::GameError;
use crate::graphkit::{CanonicalKey, PatternSpec};
use crate::referee::{winner_check_with, winning_moves_with, GameStatus, Target};

/// Maximum number of P1 claims to explore.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub p1_moves: u32,
}

impl Budget {
    pub fn new(p1_moves: u32) -> Result<Self, GameError> {
        if p1_moves == 0 {
            return Err(GameError::BudgetInvalid);
        }
        Ok(Budget { p1_moves })
    }
}

/// Value of a position for the player to move. `k` counts the winner's own
/// moves from now.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Outcome {
    MoverWinsIn { k: u32 },
    OpponentWinsIn { k: u32 },
    NoDecisionWithin { budget: u32 },
}

impl Outcome {
    /// Rank for the mover: quicker wins first, then undecided, then slower
    /// losses.
    fn rank(&self) -> (i32, i64) {
        match *self {
            Outcome::MoverWinsIn { k } => (2, -(k as i64)),
            Outcome::NoDecisionWithin { .. } => (1, 0),
            Outcome::OpponentWinsIn { k } => (0, k as i64),
        }
    }

    fn better_than(&self, other: &Outcome) -> bool {
        self.rank().cmp(&other.rank()) == Ordering::Greater
    }

    /// Plies from now until the decisive move.
    fn plies_needed(&self) -> u32 {
        match *self {
            Outcome::MoverWinsIn { k } => 2 * k - 1,
            Outcome::OpponentWinsIn { k } => 2 * k,
            Outcome::NoDecisionWithin { .. } => 0,
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Outcome::NoDecisionWithin { .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::MoverWinsIn { k } => write!(f, "mover wins in {k}"),
            Outcome::OpponentWinsIn { k } => write!(f, "opponent wins in {k}"),
            Outcome::NoDecisionWithin { budget } => write!(f, "no decision within {budget}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Entry {
    /// Exact whenever the horizon suffices, so reusable at any horizon.
    Decided(Outcome),
    /// Undecided with this many plies searched.
    Open(u32),
}

/// Negamax over orbit representatives with a transposition table keyed by
/// the canonical position.
pub struct Solver {
    target: Target,
    memo: HashMap<CanonicalKey, Entry>,
    use_memo: bool,
    nodes: u64,
    budget: u32,
}

impl Solver {
    pub fn new(target: &PatternSpec) -> Result<Self, GameError> {
        Ok(Solver {
            target: Target::new(target)?,
            memo: HashMap::new(),
            use_memo: true,
            nodes: 0,
            budget: 0,
        })
    }

    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Plies searched for `b` P1 moves: P2 answers every P1 move.
    fn horizon(p: &Position, b: Budget) -> u32 {
        match p.mover() {
            crate::board::Player::P1 => 2 * b.p1_moves,
            crate::board::Player::P2 => 2 * b.p1_moves + 1,
        }
    }

    pub fn solve(&mut self, p: &Position, b: Budget) -> Result<Outcome, GameError> {
        if winner_check_with(p, &self.target) != GameStatus::Ongoing {
            return Err(GameError::IllegalMove("game already decided".into()));
        }
        self.budget = b.p1_moves;
        Ok(self.negamax(p, Self::horizon(p, b)))
    }

    /// Best first move with its value, in class order on ties.
    pub fn best_move(&mut self, p: &Position, b: Budget) -> Result<Option<(Move, Outcome)>, GameError> {
        let out = self.solve(p, b)?;
        let plies = Self::horizon(p, b);
        let mover = p.mover();
        if let Some(&m) = winning_moves_with(p, mover, &self.target).first() {
            return Ok(Some((m, Outcome::MoverWinsIn { k: 1 })));
        }
        for m in p.symmetric_move_classes() {
            let child = p.apply_move(&m)?;
            let v = Self::lift(self.negamax(&child, plies - 1), self.budget);
            if v == out {
                return Ok(Some((m, v)));
            }
        }
        Ok(None)
    }

    fn lift(child: Outcome, budget: u32) -> Outcome {
        match child {
            Outcome::MoverWinsIn { k } => Outcome::OpponentWinsIn { k },
            Outcome::OpponentWinsIn { k } => Outcome::MoverWinsIn { k: k + 1 },
            Outcome::NoDecisionWithin { .. } => Outcome::NoDecisionWithin { budget },
        }
    }

    fn negamax(&mut self, p: &Position, plies: u32) -> Outcome {
        let undecided = Outcome::NoDecisionWithin { budget: self.budget };
        if plies == 0 {
            return undecided;
        }
        self.nodes += 1;
        let key = self.use_memo.then(|| p.key());
        if let Some(k) = &key {
            match self.memo.get(k) {
                Some(Entry::Decided(o)) if o.plies_needed() <= plies => return *o,
                Some(Entry::Decided(_)) => return undecided,
                Some(Entry::Open(h)) if *h >= plies => return undecided,
                _ => {}
            }
        }
        let result = self.search(p, plies);
        if let Some(k) = key {
            let entry = if result.is_decided() { Entry::Decided(result) } else { Entry::Open(plies) };
            self.memo.insert(k, entry);
        }
        result
    }

    fn search(&mut self, p: &Position, plies: u32) -> Outcome {
        let mover = p.mover();
        if !winning_moves_with(p, mover, &self.target).is_empty() {
            return Outcome::MoverWinsIn { k: 1 };
        }
        let mut classes = p.symmetric_move_classes();
        if plies >= 2 {
            // the opponent's threats must be answered on their edges
            let threats: Vec<_> = winning_moves_with(p, mover.opponent(), &self.target)
                .iter()
                .filter_map(|m| p.resolve(m).ok())
                .collect();
            if !threats.is_empty() {
                classes.retain(|m| p.resolve(m).is_ok_and(|ce| threats.contains(&ce)));
                if classes.is_empty() {
                    return Outcome::OpponentWinsIn { k: 1 };
                }
            }
        }
        let mut best: Option<Outcome> = None;
        // once a win in k is known, only quicker wins matter, and those fit
        // in a shorter horizon
        let mut limit = plies;
        for m in classes {
            let child = p.apply_move(&m).expect("class applies");
            let v = Self::lift(self.negamax(&child, limit - 1), self.budget);
            if best.is_none_or(|b| v.better_than(&b)) {
                best = Some(v);
                if let Outcome::MoverWinsIn { k } = v {
                    limit = (2 * k).saturating_sub(3);
                    if limit <= 1 {
                        break;
                    }
                }
            }
        }
        best.unwrap_or(Outcome::NoDecisionWithin { budget: self.budget })
    }
}

/// Value of `p` for the player to move within `b` P1 moves.
pub fn solve_bounded(p: &Position, target: &PatternSpec, b: Budget) -> Result<Outcome, GameError> {
    Solver::new(target)?.solve(p, b)
}
