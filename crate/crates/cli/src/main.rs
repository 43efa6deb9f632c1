//! `kempf`: command-line front end for the kempf-core pipelines.
//!
//! Results go to standard output as a JSON report (or plain text with
//! `--output text`). Exit status: 0 when an answer was computed, 1 on
//! internal errors and timeouts, 2 on invalid input.

mod input;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kempf_core::groebner::MonomialOrder;

#[derive(Parser, Debug)]
#[command(name = "kempf", version, about = "Kempf states, solvability reductions and semistability of Hilbert points")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,

    /// Abort Gröbner computations after this many seconds (exit 1).
    #[arg(long, value_name = "SECONDS", global = true)]
    pub timeout: Option<f64>,

    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce a polynomial system to a state-avoidance (SC) instance.
    Reduce {
        /// PolySystem JSON: {"r": .., "polys": [..]}.
        #[arg(long)]
        system: PathBuf,
        /// Also write the instance JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide an SC instance.
    SolveSc {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Decide an ESC instance.
    SolveEsc {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Reduced Gröbner basis of an ideal file (one polynomial per line).
    Groebner {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value = "lex", value_parser = parse_order)]
        order: MonomialOrder,
    },
    /// Weights of the nonzero coordinates of a point.
    State {
        #[arg(long)]
        point: PathBuf,
    },
    /// Whether ξ lies in the convex hull of a weight set.
    Hull {
        /// {"weights": [[..], ..], "xi": ["<rational>", ..]}.
        #[arg(long)]
        input: PathBuf,
    },
    /// Hilbert point of the degree-d part of an ideal.
    HilbertPoint {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Also write the point JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide GIT-semistability of a Hilbert point.
    Semistable {
        #[command(flatten)]
        ideal: OptionalIdealArgs,
        /// Exterior-vector JSON, instead of --ideal.
        #[arg(long, conflicts_with = "ideal")]
        point: Option<PathBuf>,
        /// Worker threads for the (q, ω) search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Gotzmann number of a Hilbert polynomial in t, and optionally Q(d).
    Gotzmann {
        /// Polynomial in t, e.g. "t + 1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, requires = "degree")]
        vars: Option<usize>,
        #[arg(long, requires = "vars")]
        degree: Option<u32>,
    },
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Ideal file, one homogeneous polynomial per line.
    #[arg(long)]
    pub ideal: PathBuf,
    #[arg(long)]
    pub degree: u32,
    /// Number of variables r (default: largest x index used, at least 2).
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OptionalIdealArgs {
    #[arg(long, requires = "degree")]
    pub ideal: Option<PathBuf>,
    #[arg(long, requires = "ideal")]
    pub degree: Option<u32>,
    /// Number of variables r (default: largest x index used, at least 2).
    #[arg(long, requires = "ideal")]
    pub vars: Option<usize>,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    s.parse().map_err(|e: kempf_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run::execute(cli))
}
