// SPDX-License-Identifier: Apache-2.0

//! One game per session, driven by newline-delimited JSON messages.

use serde::{Deserialize, Serialize};

use crate::board::{BoardKind, BoardSpec, Component, Move, Player, Position, VertexRef};
use crate::error::GameError;
use crate::graphkit::{PatternSpec, Vertex};
use crate::referee::{winner_check_with, winning_moves_with, GameStatus, Target};
use crate::solver::{Budget, Solver};
use crate::strategies::{build_strategy, Strategy, StrategyDecision};

/// Search depth behind `suggest` when the engine does not own the seat.
const SUGGEST_BUDGET: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClientMessage {
    NewGame {
        board: String,
        target: String,
        engine_role: String,
        engine: String,
    },
    /// `-1` stands for a fresh vertex.
    Move { component: u8, u: i64, v: i64 },
    Suggest,
    State,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeView {
    pub component: Component,
    pub u: Vertex,
    pub v: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayedView {
    pub player: Player,
    pub component: Component,
    pub u: Vertex,
    pub v: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionView {
    pub board: BoardSpec,
    pub target: PatternSpec,
    pub mover: Player,
    pub engine_role: Player,
    /// Materialized vertices per component.
    pub used: Vec<u32>,
    pub moves: Vec<PlayedView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub p1: Vec<EdgeView>,
    pub p2: Vec<EdgeView>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    IllegalMove,
    BadRequest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ServerMessage {
    State {
        position: PositionView,
        status: String,
        checks: Checks,
    },
    EngineMove {
        #[serde(rename = "move")]
        mv: EdgeView,
        rationale: String,
    },
    Error { code: ErrorCode, detail: String },
}

impl ServerMessage {
    fn error(code: ErrorCode, detail: impl Into<String>) -> Self {
        ServerMessage::Error { code, detail: detail.into() }
    }
}

struct Game {
    target: Target,
    position: Position,
    engine: Box<dyn Strategy>,
}

#[derive(Default)]
pub struct Session {
    game: Option<Game>,
}

fn bad(detail: impl Into<String>) -> ServerMessage {
    ServerMessage::error(ErrorCode::BadRequest, detail)
}

fn parse_role(s: &str) -> Result<Player, ServerMessage> {
    match s {
        "p1" => Ok(Player::P1),
        "p2" => Ok(Player::P2),
        _ => Err(bad(format!("engine_role must be p1 or p2, got {s:?}"))),
    }
}

fn vertex_ref(x: i64) -> Result<VertexRef, ServerMessage> {
    match x {
        -1 => Ok(VertexRef::Fresh),
        x if x >= 0 && x <= Vertex::MAX as i64 => Ok(VertexRef::Used(x as Vertex)),
        _ => Err(bad(format!("vertex must be -1 or a vertex id, got {x}"))),
    }
}

impl Game {
    fn status(&self) -> GameStatus {
        winner_check_with(&self.position, &self.target)
    }

    fn checks(&self, player: Player) -> Vec<EdgeView> {
        let p = &self.position;
        winning_moves_with(p, player, &self.target)
            .iter()
            .filter_map(|m| p.resolve(m).ok())
            .map(|(component, e)| EdgeView { component, u: e.lo(), v: e.hi() })
            .collect()
    }

    fn state(&self) -> ServerMessage {
        let p = &self.position;
        let status = match self.status() {
            GameStatus::Ongoing => "ongoing",
            GameStatus::WonBy { player: Player::P1, .. } => "won_p1",
            GameStatus::WonBy { player: Player::P2, .. } => "won_p2",
        };
        ServerMessage::State {
            position: PositionView {
                board: p.board(),
                target: self.target.spec().clone(),
                mover: p.mover(),
                engine_role: self.engine.role(),
                used: p.board().components().iter().map(|&c| p.materialized(c)).collect(),
                moves: p
                    .history()
                    .iter()
                    .map(|pm| PlayedView {
                        player: pm.player,
                        component: pm.component,
                        u: pm.edge.lo(),
                        v: pm.edge.hi(),
                    })
                    .collect(),
            },
            status: status.into(),
            checks: Checks {
                p1: self.checks(Player::P1),
                p2: self.checks(Player::P2),
            },
        }
    }

    fn play(&mut self, mv: &Move) -> Result<EdgeView, GameError> {
        let (component, e) = self.position.resolve(mv)?;
        self.position = self.position.apply_move(mv)?;
        Ok(EdgeView { component, u: e.lo(), v: e.hi() })
    }

    /// Lets the engine move if it is its turn and the game is open.
    fn engine_turn(&mut self, out: &mut Vec<ServerMessage>) {
        if self.status() != GameStatus::Ongoing || self.position.mover() != self.engine.role() {
            return;
        }
        let step = self.engine.decide(&self.position).and_then(|d| Ok((self.play(&d.mv)?, d.rationale)));
        match step {
            Ok((mv, rationale)) => out.push(ServerMessage::EngineMove { mv, rationale }),
            Err(e) => out.push(bad(format!("engine {} failed: {e}", self.engine.id()))),
        }
    }

    fn suggest(&self) -> Result<StrategyDecision, GameError> {
        let p = &self.position;
        if p.mover() == self.engine.role() {
            return self.engine.box_clone().decide(p);
        }
        let mut solver = Solver::new(self.target.spec())?;
        match solver.best_move(p, Budget::new(SUGGEST_BUDGET)?)? {
            Some((mv, o)) => Ok(StrategyDecision::new(mv, format!("solver: {o}"))),
            None => Err(GameError::BoardExhausted),
        }
    }
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    /// Handles one raw line; malformed input yields a `bad_request` reply.
    pub fn handle_line(&mut self, line: &str) -> Vec<String> {
        let replies = match serde_json::from_str::<ClientMessage>(line) {
            Ok(msg) => self.handle(msg),
            Err(e) => vec![bad(format!("malformed message: {e}"))],
        };
        replies
            .iter()
            .map(|r| serde_json::to_string(r).expect("replies serialize"))
            .collect()
    }

    pub fn handle(&mut self, msg: ClientMessage) -> Vec<ServerMessage> {
        match self.dispatch(msg) {
            Ok(out) => out,
            Err(e) => vec![e],
        }
    }

    fn dispatch(&mut self, msg: ClientMessage) -> Result<Vec<ServerMessage>, ServerMessage> {
        let mut out = Vec::new();
        match msg {
            ClientMessage::NewGame { board, target, engine_role, engine } => {
                let kind = BoardKind::parse(&board).map_err(|e| bad(e.to_string()))?;
                let spec = PatternSpec::parse(&target).map_err(|e| bad(e.to_string()))?;
                let role = parse_role(&engine_role)?;
                let engine = build_strategy(&engine, role).map_err(|e| bad(e.to_string()))?;
                let mut game = Game {
                    target: Target::new(&spec).map_err(|e| bad(e.to_string()))?,
                    position: Position::new(BoardSpec::for_target(kind, &spec)),
                    engine,
                };
                game.engine_turn(&mut out);
                out.push(game.state());
                self.game = Some(game);
            }
            ClientMessage::Move { component, u, v } => {
                let game = self.game.as_mut().ok_or_else(|| bad("no game; send new_game first"))?;
                let illegal = |d: String| ServerMessage::error(ErrorCode::IllegalMove, d);
                if game.status() != GameStatus::Ongoing {
                    return Err(illegal("game is over".into()));
                }
                if game.position.mover() == game.engine.role() {
                    return Err(illegal("not your turn".into()));
                }
                let c = Component::from_number(component).map_err(|e| bad(e.to_string()))?;
                let mv = Move::new(c, vertex_ref(u)?, vertex_ref(v)?);
                game.play(&mv).map_err(|e| illegal(e.to_string()))?;
                game.engine_turn(&mut out);
                out.push(game.state());
            }
            ClientMessage::Suggest => {
                let game = self.game.as_ref().ok_or_else(|| bad("no game; send new_game first"))?;
                if game.status() != GameStatus::Ongoing {
                    return Err(bad("game is over"));
                }
                let d = game.suggest().map_err(|e| bad(e.to_string()))?;
                let (component, e) = game.position.resolve(&d.mv).map_err(|e| bad(e.to_string()))?;
                out.push(ServerMessage::EngineMove {
                    mv: EdgeView { component, u: e.lo(), v: e.hi() },
                    rationale: d.rationale,
                });
            }
            ClientMessage::State => {
                let game = self.game.as_ref().ok_or_else(|| bad("no game; send new_game first"))?;
                out.push(game.state());
            }
        }
        Ok(out)
    }
}
