// SPDX-License-Identifier: Apache-2.0

//! Exhaustive checks of a scripted strategy against every opponent reply,
//! one reply per symmetry class.

use serde::{Deserialize, Serialize};

use super::Budget;
use crate::board::{BoardSpec, Move, PlayedMove, Player, Position};
use crate::error::GameError;
use crate::graphkit::{contains_pattern, PatternSpec};
use crate::referee::{holds_target, winning_moves_with, Target};
use crate::strategies::{build_strategy, Strategy, StrategyDecision};

/// Called after every decision of the checked strategy with the position
/// before, the decision and the position after. An `Err` fails the check.
pub type DecisionHook<'a> = dyn FnMut(&Position, &StrategyDecision, &Position) -> Result<(), String> + 'a;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub budget: Budget,
    /// In P2 checks, skip P1 moves after which no component can still reach
    /// the target within the remaining budget.
    pub prune_hopeless: bool,
}

impl VerifyOptions {
    pub fn new(budget: Budget) -> Self {
        VerifyOptions { budget, prune_hopeless: true }
    }

    pub fn exhaustive(budget: Budget) -> Self {
        VerifyOptions { budget, prune_hopeless: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// `trace` replays from the empty board to the failure.
    Fail { trace: Vec<PlayedMove>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub max_p1_moves_observed: u32,
    pub nodes_explored: u64,
    pub classes_pruned: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct Fail(Vec<PlayedMove>, String);

fn fail<T>(p: &Position, reason: impl Into<String>) -> Result<T, Fail> {
    Err(Fail(p.history().to_vec(), reason.into()))
}

struct Walk<'h, 'a> {
    target: Target,
    budget: u32,
    hook: Option<&'h mut DecisionHook<'a>>,
    prune: bool,
    max_p1: u32,
    nodes: u64,
    pruned: u64,
}

impl Walk<'_, '_> {
    /// Asks `s` for a move, applies it and runs the hook.
    fn play(&mut self, s: &mut dyn Strategy, p: &Position) -> Result<Position, Fail> {
        let d = match s.decide(p) {
            Ok(d) => d,
            Err(e) => return fail(p, format!("{} gave no move: {e}", s.id())),
        };
        let next = match p.apply_move(&d.mv) {
            Ok(n) => n,
            Err(e) => return fail(p, format!("{} chose an illegal move: {e}", s.id())),
        };
        if let Some(h) = self.hook.as_mut() {
            if let Err(msg) = h(p, &d, &next) {
                return fail(&next, msg);
            }
        }
        Ok(next)
    }

    fn report(self, r: Result<(), Fail>) -> VerifyReport {
        VerifyReport {
            verdict: match r {
                Ok(()) => Verdict::Pass,
                Err(Fail(trace, reason)) => Verdict::Fail { trace, reason },
            },
            max_p1_moves_observed: self.max_p1,
            nodes_explored: self.nodes,
            classes_pruned: self.pruned,
        }
    }

    fn threat_edges(&self, p: &Position, player: Player) -> Vec<(crate::board::Component, crate::graphkit::Edge)> {
        winning_moves_with(p, player, &self.target)
            .iter()
            .filter_map(|m| p.resolve(m).ok())
            .collect()
    }

    /// P1 (the checked side) to move.
    fn p1_node(&mut self, s: &mut dyn Strategy, p: &Position) -> Result<(), Fail> {
        self.nodes += 1;
        if p.moves_made(Player::P1) as u32 >= self.budget {
            return fail(p, format!("no win within {} moves", self.budget));
        }
        let q = self.play(s, p)?;
        let made = q.moves_made(Player::P1) as u32;
        if holds_target(&q, Player::P1, &self.target) {
            self.max_p1 = self.max_p1.max(made);
            return Ok(());
        }
        if !winning_moves_with(&q, Player::P2, &self.target).is_empty() {
            return fail(&q, "opponent has a winning move");
        }
        let threats = self.threat_edges(&q, Player::P1);
        for m in q.symmetric_move_classes() {
            let r = q.apply_move(&m).expect("class applies");
            let mut child = s.box_clone();
            let blocks = q.resolve(&m).is_ok_and(|ce| threats.contains(&ce));
            if !threats.is_empty() && !blocks {
                // an open threat must be taken at once
                self.nodes += 1;
                let w = self.play(child.as_mut(), &r)?;
                if !holds_target(&w, Player::P1, &self.target) {
                    return fail(&w, "open threat not taken");
                }
                self.max_p1 = self.max_p1.max(made + 1);
                continue;
            }
            self.p1_node(child.as_mut(), &r)?;
        }
        Ok(())
    }

    /// Components where P1 can still complete the target with `left` moves.
    fn p1_can_win(&self, p: &Position, left: u32) -> bool {
        let need = self.target.edge_count() as u32;
        p.board().components().iter().any(|&c| {
            let g = p.graph(c, Player::P1);
            let have = g.edge_count() as u32;
            match (have + left).cmp(&need) {
                std::cmp::Ordering::Less => false,
                // every remaining edge must land inside one copy
                std::cmp::Ordering::Equal => contains_pattern(self.target.graph(), g),
                std::cmp::Ordering::Greater => true,
            }
        })
    }

    /// P1 (the free side) to move against the checked P2 strategy.
    fn p2_check_node(&mut self, s: &mut dyn Strategy, p: &Position) -> Result<(), Fail> {
        self.nodes += 1;
        let made = p.moves_made(Player::P1) as u32;
        self.max_p1 = self.max_p1.max(made);
        if made >= self.budget {
            return Ok(());
        }
        for m in p.symmetric_move_classes() {
            let q = p.apply_move(&m).expect("class applies");
            if holds_target(&q, Player::P1, &self.target) {
                self.max_p1 = self.max_p1.max(made + 1);
                return fail(&q, "first player completed the target");
            }
            if self.prune && !self.p1_can_win(&q, self.budget - made - 1) {
                self.pruned += 1;
                continue;
            }
            let mut child = s.box_clone();
            let r = self.play(child.as_mut(), &q)?;
            if holds_target(&r, Player::P2, &self.target) {
                continue;
            }
            self.p2_check_node(child.as_mut(), &r)?;
        }
        Ok(())
    }
}

fn check_seat(s: &dyn Strategy, want: Player) -> Result<(), GameError> {
    if s.role() != want {
        return Err(GameError::InvalidStrategyId(format!("{} does not play as {want:?}", s.id())));
    }
    Ok(())
}

/// Checks that `strategy`, moving first, completes `target` within the
/// budget against every reply.
pub fn verify_p1(
    strategy: Box<dyn Strategy>,
    target: &PatternSpec,
    board: BoardSpec,
    opts: VerifyOptions,
    hook: Option<&mut DecisionHook<'_>>,
) -> Result<VerifyReport, GameError> {
    check_seat(strategy.as_ref(), Player::P1)?;
    let mut s = strategy;
    let mut w = Walk {
        target: Target::new(target)?,
        budget: opts.budget.p1_moves,
        hook,
        prune: opts.prune_hopeless,
        max_p1: 0,
        nodes: 0,
        pruned: 0,
    };
    let r = w.p1_node(s.as_mut(), &Position::new(board));
    Ok(w.report(r))
}

/// Checks that `strategy`, moving second, keeps the first player from
/// completing `target` within the budget.
pub fn verify_p2(
    strategy: Box<dyn Strategy>,
    target: &PatternSpec,
    board: BoardSpec,
    opts: VerifyOptions,
    hook: Option<&mut DecisionHook<'_>>,
) -> Result<VerifyReport, GameError> {
    check_seat(strategy.as_ref(), Player::P2)?;
    let mut s = strategy;
    let mut w = Walk {
        target: Target::new(target)?,
        budget: opts.budget.p1_moves,
        hook,
        prune: opts.prune_hopeless,
        max_p1: 0,
        nodes: 0,
        pruned: 0,
    };
    let r = w.p2_check_node(s.as_mut(), &Position::new(board));
    Ok(w.report(r))
}

pub fn verify_p1_strategy(
    id: &str,
    target: &PatternSpec,
    board: BoardSpec,
    opts: VerifyOptions,
) -> Result<VerifyReport, GameError> {
    verify_p1(build_strategy(id, Player::P1)?, target, board, opts, None)
}

pub fn verify_p2_strategy(
    id: &str,
    target: &PatternSpec,
    board: BoardSpec,
    opts: VerifyOptions,
) -> Result<VerifyReport, GameError> {
    verify_p2(build_strategy(id, Player::P2)?, target, board, opts, None)
}

/// A move-for-move replay of `trace` is the failing game.
pub fn replay_trace(board: BoardSpec, trace: &[PlayedMove]) -> Result<Position, GameError> {
    let mut p = Position::new(board);
    for pm in trace {
        if pm.player != p.mover() {
            return Err(GameError::IllegalMove("trace out of turn".into()));
        }
        let mv: Move = p.move_for_edge(pm.component, pm.edge.lo(), pm.edge.hi())?;
        p = p.apply_move(&mv)?;
    }
    Ok(p)
}
