// SPDX-License-Identifier: Apache-2.0

mod serve;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use ramsey_core::arena::play_match;
use ramsey_core::board::{BoardKind, BoardSpec, Player, Position};
use ramsey_core::graphkit::{deficiency_family, PatternSpec};
use ramsey_core::solver::{verify_p1, verify_p2, Budget, Solver, VerifyOptions};
use ramsey_core::strategies::build_strategy;

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Strong Ramsey game engine and strategy verifier")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Board {
    Single,
    Double,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Role {
    P1,
    P2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    P1,
    P2,
    None,
}

#[derive(clap::Args)]
struct BoardArgs {
    /// Pattern: k2ts:T,S | cycle:L | graph:u-v,... | file:PATH
    #[arg(long)]
    target: String,
    #[arg(long, value_enum)]
    board: Board,
    /// Vertices per component; defaults to a size fit for the target.
    #[arg(long)]
    capacity: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play one match and print its record.
    Play {
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        #[command(flatten)]
        board: BoardArgs,
        /// Maximum number of P1 moves.
        #[arg(long, default_value_t = 50)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the record here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 unless this is the result.
        #[arg(long, value_enum)]
        expect_winner: Option<Expect>,
    },
    /// Value of the empty position within a P1-move budget.
    Solve {
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long)]
        budget: u32,
    },
    /// Check a scripted strategy against every reply.
    Verify {
        #[arg(long)]
        strategy: String,
        #[arg(long, value_enum)]
        role: Role,
        #[command(flatten)]
        board: BoardArgs,
        #[arg(long)]
        budget: u32,
        /// Disable hopeless-branch pruning in P2 checks.
        #[arg(long)]
        exhaustive: bool,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the graphs left after deleting t-1 edges from K_{2,t+1}(t-2),
    /// one per isomorphism class.
    EnumerateFamily {
        #[arg(long)]
        t: u32,
    },
    /// Serve the session protocol over WebSocket, or standard streams.
    Serve {
        #[arg(long, default_value_t = 8765)]
        port: u16,
        #[arg(long)]
        stdio: bool,
    },
}

/// Errors that should exit with status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage<E: std::fmt::Display>(e: E) -> anyhow::Error {
    Usage(e.to_string()).into()
}

impl BoardArgs {
    fn resolve(&self) -> anyhow::Result<(PatternSpec, BoardSpec)> {
        let target = PatternSpec::parse(&self.target).map_err(usage)?;
        let kind = match self.board {
            Board::Single => BoardKind::Single,
            Board::Double => BoardKind::Double,
        };
        let board = match self.capacity {
            Some(n) => BoardSpec::finite(kind, n),
            None => BoardSpec::for_target(kind, &target),
        };
        Ok((target, board))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            // write then rename so readers never see a partial file
            let tmp = path.with_extension("tmp");
            std::fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
            std::fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Play { p1, p2, board, budget, seed, out, expect_winner } => {
            let (target, board) = board.resolve()?;
            for (id, seat) in [(&p1, Player::P1), (&p2, Player::P2)] {
                if id != "random" {
                    build_strategy(id, seat).map_err(usage)?;
                }
            }
            let record = play_match(&p1, &p2, &target, board, budget, seed).map_err(usage)?;
            emit(&record.to_json(), out.as_ref())?;
            if let Some(f) = &record.result.fault {
                eprintln!("fault: {f}");
                return Ok(1);
            }
            let got = match record.result.winner {
                Some(Player::P1) => Expect::P1,
                Some(Player::P2) => Expect::P2,
                None => Expect::None,
            };
            Ok(if expect_winner.is_none_or(|e| e == got) { 0 } else { 1 })
        }
        Cmd::Solve { board, budget } => {
            let (target, board) = board.resolve()?;
            let b = Budget::new(budget).map_err(usage)?;
            let mut solver = Solver::new(&target).map_err(usage)?;
            let p = Position::new(board);
            let best = solver.best_move(&p, b)?;
            let value = serde_json::json!({
                "target": target.to_string(),
                "budget": budget,
                "outcome": best.map(|(_, o)| o),
                "best_move": best.map(|(m, _)| m.to_string()),
                "nodes": solver.nodes(),
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
            Ok(0)
        }
        Cmd::Verify { strategy, role, board, budget, exhaustive, report } => {
            let (target, board) = board.resolve()?;
            let seat = if role == Role::P1 { Player::P1 } else { Player::P2 };
            let s = build_strategy(&strategy, seat).map_err(usage)?;
            let b = Budget::new(budget).map_err(usage)?;
            let opts = if exhaustive { VerifyOptions::exhaustive(b) } else { VerifyOptions::new(b) };
            let r = match seat {
                Player::P1 => verify_p1(s, &target, board, opts, None)?,
                Player::P2 => verify_p2(s, &target, board, opts, None)?,
            };
            let text = serde_json::to_string_pretty(&r)?;
            match &report {
                Some(path) => {
                    emit(&text, Some(path))?;
                    println!("{}", if r.passed() { "pass" } else { "fail" });
                }
                None => println!("{text}"),
            }
            Ok(if r.passed() { 0 } else { 1 })
        }
        Cmd::EnumerateFamily { t } => {
            for g in deficiency_family(t).map_err(usage)? {
                let edges: Vec<String> = g.edges().map(|e| format!("{}-{}", e.lo(), e.hi())).collect();
                println!("{}", edges.join(" "));
            }
            Ok(0)
        }
        Cmd::Serve { port, stdio } => {
            if stdio {
                serve::stdio()?;
            } else {
                serve::websocket(port)?;
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
