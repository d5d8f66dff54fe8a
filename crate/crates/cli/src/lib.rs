//! The `ramsey` command: play, verify, solve, explain and serve.

pub mod server;

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ramsey_core::board::BoardKind;
use ramsey_core::session::{explain, parse_trace, trace_to_jsonl, P1Move};
use ramsey_core::strategy::StrategyConfig;
use ramsey_core::view::Game;
use ramsey_verifier::exhaustive::{exhaustive_verify, ExhaustiveOptions};
use ramsey_verifier::oracle::{oracle_solve, BoardSpec, TargetSpec};
use ramsey_verifier::stochastic::{stochastic_verify, StochasticOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GameArg {
    Graph,
    Hyper,
}

impl From<GameArg> for BoardKind {
    fn from(g: GameArg) -> BoardKind {
        match g {
            GameArg::Graph => BoardKind::TwoCliques,
            GameArg::Hyper => BoardKind::Hyper4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    G,
    Triangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoardArg {
    TwoCliques,
    Clique,
}

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "P2 drawing strategy for the strong Ramsey game with target K6 minus K4")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Play P1 from standard input against the strategy.
    Play {
        #[arg(long, value_enum, default_value = "graph")]
        game: GameArg,
        #[arg(long, default_value_t = 14)]
        n: u8,
        /// One JSON object per P1 move instead of text lines.
        #[arg(long)]
        json: bool,
        /// Write the game trace here when input ends.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Exhaustive search when --depth is given, seeded playouts otherwise.
    Verify {
        #[arg(long, value_enum, default_value = "graph")]
        game: GameArg,
        #[arg(long, default_value_t = 14)]
        n: u8,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        playouts: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// P1 moves per playout.
        #[arg(long, default_value_t = 12)]
        budget: usize,
        /// Write the first violating line of play here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Make one case-tree branch fail, to watch the verifier catch it.
        #[arg(long)]
        disable_branch: Option<String>,
    },
    /// Brute-force minimax on a small board.
    Solve {
        #[arg(long, value_enum, default_value = "two-cliques")]
        board: BoardArg,
        #[arg(long, value_enum, default_value = "g")]
        target: TargetArg,
        #[arg(long, default_value_t = 6)]
        n: u8,
        /// Total moves of both players.
        #[arg(long)]
        budget: usize,
    },
    /// Annotate a trace file with case labels and role names.
    Explain {
        trace: PathBuf,
        /// Inferred from the first edge when absent.
        #[arg(long, value_enum)]
        game: Option<GameArg>,
        #[arg(long, default_value_t = 14)]
        n: u8,
        #[arg(long)]
        json: bool,
    },
    /// HTTP bridge for the playground.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(cli.command, input, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_VIOLATION
        }
    }
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Io(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// `RAMSEY_SEED` wins over the flag.
fn effective_seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("RAMSEY_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| usage(format!("RAMSEY_SEED={s:?} is not an integer"))),
        Err(_) => Ok(flag),
    }
}

fn check_n(kind: BoardKind, n: u8) -> Result<(), Failure> {
    ramsey_core::board::GameState::new(kind, n).map(|_| ()).map_err(usage)
}

fn execute(cmd: Command, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Play { game, n, json, trace } => {
            let kind = game.into();
            let mut g = Game::new(kind, n).map_err(usage)?;
            play(&mut g, json, input, out, err)?;
            if let Some(path) = trace {
                std::fs::write(path, trace_to_jsonl(&g.session.trace))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { game, n, depth, playouts, seed, budget, trace, disable_branch } => {
            let kind = game.into();
            check_n(kind, n)?;
            let config = StrategyConfig { disabled_branch: disable_branch, ..StrategyConfig::default() };
            let verdict = match depth {
                Some(depth) => {
                    let mut opts = ExhaustiveOptions::new(kind, n, depth);
                    opts.config = config;
                    exhaustive_verify(&opts)
                }
                None => {
                    let seed = effective_seed(seed)?;
                    stochastic_verify(&StochasticOptions { kind, n, playouts, max_p1_moves: budget, seed, config })
                }
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&verdict).expect("verdict serializes"))?;
            if let (Some(path), Some(first)) = (trace, verdict.violations.first()) {
                std::fs::write(path, trace_to_jsonl(&first.trace))?;
            }
            Ok(if verdict.is_safe() { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::Solve { board, target, n, budget } => {
            let board = match board {
                BoardArg::TwoCliques => BoardSpec::TwoCliques(n),
                BoardArg::Clique => BoardSpec::Clique(n),
            };
            let target = match target {
                TargetArg::G => TargetSpec::G,
                TargetArg::Triangle => TargetSpec::Triangle,
            };
            let res = oracle_solve(board, target, budget).map_err(usage)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&res).expect("result serializes"))?;
            Ok(EXIT_OK)
        }
        Command::Explain { trace, game, n, json } => {
            let text = std::fs::read_to_string(&trace).map_err(|e| usage(format!("{}: {e}", trace.display())))?;
            let entries = parse_trace(&text).map_err(usage)?;
            let kind = match game {
                Some(g) => g.into(),
                None if entries.iter().any(|t| t.edge.starts_with("h:")) => BoardKind::Hyper4,
                None => BoardKind::TwoCliques,
            };
            let lines = explain(kind, n, &entries).map_err(usage)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&lines).expect("strings serialize"))?;
            } else {
                for l in lines {
                    writeln!(out, "{l}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Builder::new_current_thread().enable_all().build()?;
            rt.block_on(server::serve(port))?;
            Ok(EXIT_OK)
        }
    }
}

fn play(g: &mut Game, json: bool, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    for line in input.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let res = t.parse::<P1Move>().map_err(|e| e.to_string()).and_then(|mv| g.play(mv).map_err(|e| e.to_string()));
        match res {
            Ok(outcome) if json => writeln!(out, "{}", serde_json::to_string(&outcome).expect("outcome serializes"))?,
            Ok(outcome) => {
                let trace = &g.session.trace;
                let p2 = &trace[trace.len() - outcome.p2_moves.len()..];
                for t in p2 {
                    writeln!(out, "{} case={}", t.edge, t.case.as_deref().unwrap_or("-"))?;
                }
                if let Some(w) = outcome.winner {
                    writeln!(out, "winner={w}")?;
                }
            }
            Err(e) if json => {
                writeln!(out, "{}", serde_json::json!({ "error": e, "input": t }))?;
            }
            Err(e) => writeln!(err, "error: {e}")?,
        }
        if g.session.finished() {
            break;
        }
    }
    Ok(())
}
