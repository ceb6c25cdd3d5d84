//! `ditcalc`: entropy reports for partitions and distributions, partition comparison,
//! the digit-partition demos and the verification harness.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ditcalc::Family;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// Carries the rendered reports.
    #[error("verification failed")]
    Verification(String),
}

impl From<ditcalc::Error> for CliError {
    fn from(e: ditcalc::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "ditcalc", version, about = "Logical, Shannon and block-count entropy of partitions and distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BaseArg {
    /// Logarithm base for Shannon quantities
    #[arg(long, env = "DITCALC_BASE", default_value_t = 2.0)]
    pub base: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy report for a partition file (text or JSON format)
    Entropy {
        file: PathBuf,
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        json: bool,
        /// Include the dit set (ordered pairs in different blocks)
        #[arg(long)]
        dits: bool,
    },
    /// Entropy report for a `label,count` or `label,prob` CSV distribution
    Dist {
        file: PathBuf,
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        json: bool,
        /// Distance matrix file for quadratic entropy
        #[arg(long, value_name = "MATRIX")]
        quadratic: Option<PathBuf>,
        /// Parametric family: degree-alpha, havrda-charvat, patil-taillie or tsallis
        #[arg(long, requires = "param")]
        family: Option<Family>,
        #[arg(long, requires = "family", allow_negative_numbers = true)]
        param: Option<f64>,
    },
    /// Joint quantities of two partitions of the same labels
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        json: bool,
    },
    /// Worked examples of counting distinctions
    Demo {
        #[command(subcommand)]
        which: DemoKind,
    },
    /// Run the exhaustive, independence and random-distribution checks
    Verify {
        /// Largest universe for the exhaustive sweep (2..=6)
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Number of random distribution trials
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest distribution length in the random trials
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Product grids AxB for the independence checks
        #[arg(long = "grid", value_parser = parse_grid, default_values = ["2x2", "2x3", "3x3", "3x4", "4x4"])]
        grids: Vec<(usize, usize)>,
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Subcommand, Debug)]
enum DemoKind {
    /// n binary-digit partitions on 2^n elements
    Binary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// n weighings (ternary digits) on 3^n coins
    Coins {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Fault {
    CorruptMeet,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected AxB, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Entropy {
            file,
            base,
            json,
            dits,
        } => commands::entropy(&file, base, json, dits),
        Command::Dist {
            file,
            base,
            json,
            quadratic,
            family,
            param,
        } => commands::dist(&file, base, json, quadratic.as_deref(), family.zip(param)),
        Command::Compare { a, b, base, json } => commands::compare(&a, &b, base, json),
        Command::Demo { which } => match which {
            DemoKind::Binary { n, json } => commands::demo(2, n, json),
            DemoKind::Coins { n, json } => commands::demo(3, n, json),
        },
        Command::Verify {
            max_n,
            trials,
            seed,
            n_max,
            grids,
            json,
            inject_fault,
        } => commands::verify(max_n, trials, seed, n_max, &grids, json, inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
