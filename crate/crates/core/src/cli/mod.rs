//! Batch front end: job specs in, reports out.
//!
//! Exit codes: 0 success, 1 internal error or a demo that missed its pinned
//! values, 2 invalid input, 3 family not pre-Jaffard, 4 step budget
//! exceeded, 5 a semistar verification failed.

mod commands;
pub mod demos;
mod render;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

pub use commands::{cmd_analyze, cmd_check, cmd_derive, cmd_semistar, Outcome};
pub use demos::{run_demo, DEMO_IDS};
pub use spec::JobSpec;

use crate::error::Error;
use crate::family::DEFAULT_MAX_STEPS;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_PRE_JAFFARD: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_SEMISTAR_FAIL: i32 = 5;

pub const DEFAULT_BOUND: i64 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "jaffard", version, about = "Derived sequences of pre-Jaffard families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; defaults to the spec's `format`, then json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Budget of listed stages for the derived sequence.
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    /// Component bound for semistar brute force.
    #[arg(long, global = true)]
    pub bound: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Topology facts and family classification.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the derived sequence.
    Derive {
        #[arg(long)]
        input: PathBuf,
    },
    /// Stable semistar operations of a semilocal model.
    Semistar {
        #[arg(long)]
        input: PathBuf,
    },
    /// Family flags, Jaffard members and per-member evidence.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a named fixture.
    Demo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(DEMO_IDS))]
        id: String,
        /// Size parameter for the demos that take one.
        #[arg(long)]
        n: Option<usize>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OrdinalParse { .. }
        | Error::DepthExceeded { .. }
        | Error::NotDivisible(_)
        | Error::InvalidPoset(_)
        | Error::InvalidSpace(_)
        | Error::MalformedDescriptor(_)
        | Error::UnrepresentableResult(_)
        | Error::CantorPoint
        | Error::InvalidDomain(_)
        | Error::MixedModels
        | Error::InvalidSpec(_)
        | Error::HypothesisViolation(_) => EXIT_INVALID,
        Error::NotPreJaffard(_) => EXIT_NOT_PRE_JAFFARD,
        Error::StepBudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INTERNAL,
    }
}

/// Parses arguments, runs one job, writes the report, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((outcome, format)) => match render::render(&outcome, format) {
            Ok(text) => {
                let _ = out.write_all(text.as_bytes());
                outcome.code
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                exit_code(&e)
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> crate::Result<(Outcome, Format)> {
    if cli.bound.is_some_and(|b| b < 1) {
        return Err(Error::InvalidSpec("--bound must be at least 1".into()));
    }
    let load = |p: &PathBuf| JobSpec::load(p);
    let (outcome, spec_format) = match &cli.command {
        Command::Analyze { input } => {
            let s = load(input)?;
            (cmd_analyze(&s)?, s.format)
        }
        Command::Derive { input } => {
            let s = load(input)?;
            let steps = cli.max_steps.or(s.max_steps).unwrap_or(DEFAULT_MAX_STEPS);
            (cmd_derive(&s, steps)?, s.format)
        }
        Command::Semistar { input } => {
            let s = load(input)?;
            let bound = cli.bound.or(s.bound).unwrap_or(DEFAULT_BOUND);
            (cmd_semistar(&s, bound)?, s.format)
        }
        Command::Check { input } => {
            let s = load(input)?;
            (cmd_check(&s)?, s.format)
        }
        Command::Demo { id, n } => (
            run_demo(id, *n, cli.max_steps.unwrap_or(DEFAULT_MAX_STEPS), cli.bound)?,
            None,
        ),
    };
    Ok((outcome, cli.format.or(spec_format).unwrap_or(Format::Json)))
}
