// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("capacity exceeded in component {0}")]
    CapacityExceeded(u8),
    #[error("operation requires a double-clique board")]
    WrongBoardKind,
    #[error("strategy has no rule for this position: {0}")]
    StrategyUndefined(String),
    #[error("no unclaimed edge remains on the board")]
    BoardExhausted,
    #[error("budget must be at least 1 P1 move")]
    BudgetInvalid,
    #[error("unknown or malformed strategy id: {0}")]
    InvalidStrategyId(String),
    #[error("invalid board: {0}")]
    InvalidBoard(String),
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
