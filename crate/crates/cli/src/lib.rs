//! Command-line driver: `simplify`, `evaluate` and `ccd-eval`.

pub mod commands;
pub mod error;
pub mod input;
pub mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use editsimp::search::OpSet;

pub use crate::error::{exit, CliError};
use crate::spec::BackendSpec;

#[derive(Debug, Parser)]
#[command(name = "editsimp", version, about = "Iterative edit-based sentence simplification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplify every sentence of a JSONL corpus and write traces.
    Simplify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Edit operations: pa, dl, or pa,dl.
        #[arg(long, default_value = "pa,dl")]
        ops: OpSet,
        #[arg(long, env = "GRS_CONFIG")]
        config: Option<PathBuf>,
        #[arg(long, default_value = "mock")]
        backends: BackendSpec,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Refuse backends that could consume randomness.
        #[arg(long)]
        seedless: bool,
    },
    /// SARI, FKGL and mean output length for line-aligned corpora.
    Evaluate {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Comma-separated reference files.
        #[arg(long, value_delimiter = ',', required = true)]
        refs: Vec<PathBuf>,
        /// Compare case-sensitively (default lowercases everything).
        #[arg(long)]
        keep_case: bool,
    },
    /// Score complex-word predictions from classifier attention.
    CcdEval {
        #[arg(long)]
        input: PathBuf,
        /// Also write predictions in the same tab-separated format.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "mock")]
        backends: BackendSpec,
    },
}

/// Executes a parsed command, returning what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Simplify {
            input,
            output,
            ops,
            config,
            backends,
            workers,
            seedless,
        } => {
            let args = commands::SimplifyArgs {
                input,
                output,
                ops,
                config,
                backends,
                workers,
                seedless,
            };
            let m = commands::simplify(&args)?;
            Ok(format!(
                "{} sentences, {} steps -> {}\n",
                m.sentences,
                m.steps,
                args.output.display()
            ))
        }
        Command::Evaluate {
            source,
            output,
            refs,
            keep_case,
        } => {
            let report = commands::evaluate(&commands::EvaluateArgs {
                source,
                output,
                refs,
                keep_case,
            })?;
            Ok(commands::to_json(&report))
        }
        Command::CcdEval {
            input,
            output,
            backends,
        } => {
            let result = commands::ccd_eval(&commands::CcdEvalArgs {
                input,
                output,
                backends,
            })?;
            Ok(commands::to_json(&result))
        }
    }
}
