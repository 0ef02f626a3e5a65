//! `qubo-order`: compile ordering problems to QUBO files, solve them with
//! Hopfield descent, and check results against brute-force oracles.
//!
//! Exit codes: 0 success, 2 invalid arguments or input files, 3 all-zero
//! input with normalization, 4 solver ended in an infeasible state (or ran
//! out of flips), 5 a verification check failed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qubo-order", version, about = "Sorting, tree and heap building as QUBOs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ascending,
    Descending,
    Bst,
    Heap,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit an order program as JSON.
    Program {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Branching factor (heaps accept b >= 2, search trees only 2).
        #[arg(long, default_value_t = 2)]
        b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a QUBO file from input values and a program file.
    Build {
        /// JSON array or one number per line.
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        lambda_r: Option<f64>,
        #[arg(long)]
        lambda_c: Option<f64>,
        #[arg(long)]
        no_normalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run steepest descent on a QUBO file.
    Solve {
        #[arg(long)]
        qubo: PathBuf,
        /// Print one line per step: index, state glyphs, energy.
        #[arg(long)]
        trace: bool,
        #[arg(long, env = "QP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        #[arg(long)]
        max_steps: Option<usize>,
        /// Values to reorder, if the QUBO file does not carry them.
        #[arg(long)]
        x: Option<PathBuf>,
    },
    /// Build, solve and certify against the oracles.
    Verify {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        program: PathBuf,
        /// Also search all 2^(n^2) binary states (n <= 4).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, env = "QP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        restarts: usize,
        #[arg(long)]
        lambda_r: Option<f64>,
        #[arg(long)]
        lambda_c: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Program { kind, n, b, out } => commands::program(kind, n, b, out.as_deref()),
        Command::Build {
            x,
            program,
            lambda_r,
            lambda_c,
            no_normalize,
            out,
        } => commands::build(&x, &program, lambda_r, lambda_c, !no_normalize, out.as_deref()),
        Command::Solve {
            qubo,
            trace,
            seed,
            restarts,
            max_steps,
            x,
        } => commands::solve(&qubo, trace, seed, restarts, max_steps, x.as_deref()),
        Command::Verify {
            x,
            program,
            exhaustive,
            seed,
            restarts,
            lambda_r,
            lambda_c,
        } => commands::verify(&x, &program, exhaustive, seed, restarts, lambda_r, lambda_c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
