// SPDX-License-Identifier: Apache-2.0

//! Match driver, game records and the session protocol.

mod session;

pub use session::{ClientMessage, EdgeView, ErrorCode, PositionView, ServerMessage, Session};

use serde::{Deserialize, Serialize};

use crate::board::{BoardSpec, Component, Player, Position};
use crate::error::GameError;
use crate::graphkit::{PatternSpec, Vertex};
use crate::referee::{winner_check_with, GameStatus, Target};
use crate::strategies::{build_strategy, Strategy};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agents {
    #[serde(rename = "P1")]
    pub p1: String,
    #[serde(rename = "P2")]
    pub p2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordedMove {
    /// 1-based.
    pub index: usize,
    pub player: Player,
    pub component: Component,
    pub u: Vertex,
    pub v: Vertex,
    pub rationale: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub winner: Option<Player>,
    pub p1_move_count: usize,
    /// Set when an agent failed to produce a legal move.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub board: BoardSpec,
    pub target: PatternSpec,
    pub agents: Agents,
    pub moves: Vec<RecordedMove>,
    pub result: MatchResult,
    pub seed: u64,
}

impl GameRecord {
    /// Positions before each move, then the final one.
    pub fn positions(&self) -> Result<Vec<Position>, GameError> {
        let mut p = Position::new(self.board);
        let mut out = vec![p.clone()];
        for m in &self.moves {
            if m.player != p.mover() {
                return Err(GameError::IllegalMove(format!("move {} out of turn", m.index)));
            }
            p = p.apply_move(&p.move_for_edge(m.component, m.u, m.v)?)?;
            out.push(p.clone());
        }
        Ok(out)
    }

    pub fn final_position(&self) -> Result<Position, GameError> {
        Ok(self.positions()?.pop().expect("at least the empty position"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }
}

/// `random` without a seed takes the match seed.
fn agent_id(id: &str, seed: u64) -> String {
    if id == "random" {
        format!("random:seed={seed}")
    } else {
        id.to_string()
    }
}

/// Plays `p1` against `p2` until someone wins, P1 has used `max_p1_moves`,
/// or no move is left.
pub fn play_match(
    p1: &str,
    p2: &str,
    target: &PatternSpec,
    board: BoardSpec,
    max_p1_moves: usize,
    seed: u64,
) -> Result<GameRecord, GameError> {
    let (id1, id2) = (agent_id(p1, seed), agent_id(p2, seed));
    let s1 = build_strategy(&id1, Player::P1)?;
    let s2 = build_strategy(&id2, Player::P2)?;
    play_match_with(s1, s2, target, board, max_p1_moves, seed)
}

pub fn play_match_with(
    mut p1: Box<dyn Strategy>,
    mut p2: Box<dyn Strategy>,
    target: &PatternSpec,
    board: BoardSpec,
    max_p1_moves: usize,
    seed: u64,
) -> Result<GameRecord, GameError> {
    let tgt = Target::new(target)?;
    let mut p = Position::new(board);
    let mut moves = Vec::new();
    let mut fault = None;
    let mut winner = None;
    loop {
        let mover = p.mover();
        if mover == Player::P1 && p.moves_made(Player::P1) >= max_p1_moves {
            break;
        }
        if p.candidate_moves().is_empty() {
            break;
        }
        let agent = if mover == Player::P1 { p1.as_mut() } else { p2.as_mut() };
        let step = agent.decide(&p).and_then(|d| {
            let ce = p.resolve(&d.mv)?;
            Ok((p.apply_move(&d.mv)?, ce, d.rationale))
        });
        let (next, (c, e), rationale) = match step {
            Ok(s) => s,
            Err(err) => {
                fault = Some(format!("{mover} ({}): {err}", agent.id()));
                break;
            }
        };
        p = next;
        moves.push(RecordedMove {
            index: moves.len() + 1,
            player: mover,
            component: c,
            u: e.lo(),
            v: e.hi(),
            rationale,
        });
        if let GameStatus::WonBy { player, .. } = winner_check_with(&p, &tgt) {
            winner = Some(player);
            break;
        }
    }
    Ok(GameRecord {
        board,
        target: target.clone(),
        agents: Agents { p1: p1.id(), p2: p2.id() },
        moves,
        result: MatchResult {
            winner,
            p1_move_count: p.moves_made(Player::P1),
            fault,
        },
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::BoardKind;

    #[test]
    fn cycle_beats_random_quickly() {
        let target = PatternSpec::cycle(5).unwrap();
        let board = BoardSpec::for_target(BoardKind::Single, &target);
        let r = play_match("p1-cycle:5", "random:seed=7", &target, board, 10, 0).unwrap();
        assert_eq!(r.result.winner, Some(Player::P1));
        assert!(r.result.p1_move_count <= 7);
        assert_eq!(r.moves[0].index, 1);
    }

    #[test]
    fn record_replays_and_round_trips() {
        let target = PatternSpec::k2ts(3, 0).unwrap();
        let board = BoardSpec::for_target(BoardKind::Double, &target);
        let r = play_match("p1-k23", "random", &target, board, 13, 1).unwrap();
        assert_eq!(r.agents.p2, "random:seed=1");
        let back: GameRecord = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let last = r.final_position().unwrap();
        assert_eq!(last.history().len(), r.moves.len());
    }

    #[test]
    fn budget_cap_stops_the_game() {
        let target = PatternSpec::k2ts(4, 1).unwrap();
        let board = BoardSpec::for_target(BoardKind::Double, &target);
        let r = play_match("random:seed=3", "p2-defense:t=3", &target, board, 4, 0).unwrap();
        assert_eq!(r.result.p1_move_count, 4);
        assert_eq!(r.result.winner, None);
    }
}
