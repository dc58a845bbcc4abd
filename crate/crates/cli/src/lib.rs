//! Command-line front end: expression parsing, definition files, subcommands and reports.
//!
//! Exit codes: 0 on success, 1 when the mathematics rejects the input (or `verify` finds a
//! failing check), 2 for usage, parse and file errors.

pub mod commands;
pub mod cover;
pub mod parse;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use cover::{CoverData, CoverDefinition};
pub use parse::{format_expression, parse_expression, parse_factored, ParseError};
pub use report::Report;

/// Seed used by randomized commands when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Lines sampled by `scan-jumps` when `--samples` is absent.
pub const DEFAULT_SAMPLES: usize = 200;
/// Cases per check run by `verify` when `--cases` is absent.
pub const DEFAULT_CASES: usize = 100;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("definition line {line}: {message}")]
    Definition { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Math(#[from] tricover::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) | CliError::ChecksFailed(_) => 1,
            CliError::Parse(_) | CliError::Definition { .. } | CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Parse(ParseError::Syntax { .. }) => "SyntaxError".into(),
            CliError::Parse(ParseError::NotHomogeneous(..)) => "NotHomogeneous".into(),
            CliError::Definition { .. } => "DefinitionError".into(),
            CliError::Usage(_) => "UsageError".into(),
            CliError::Io { .. } => "IoError".into(),
            CliError::Math(e) => {
                let debug = format!("{e:?}");
                debug
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or("MathError")
                    .to_string()
            }
            CliError::ChecksFailed(_) => "ChecksFailed".into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tricover", version, about = "Exact computations with triple covers of the plane")]
pub struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Coefficient field: q or p:<prime>. Overrides the field of a definition file.
    #[arg(long, global = true, value_name = "q|p:<prime>")]
    pub field: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tan pipeline: decomposition, abc data, ramification, classification.
    Analyze { file: PathBuf },
    /// Miranda data: validation, e f g, discriminant, Galois and cubic-section flags.
    Miranda { file: PathBuf },
    /// Miranda data of a Tan cover on the charts U1 and U2, with the discriminant identities.
    Transform { file: PathBuf },
    /// Classification entry for an even branch degree.
    Classify {
        #[arg(long)]
        degree: i64,
    },
    /// Splitting type of a bundle on one line.
    Splitting {
        /// split:t1,t2 | omega:t | presentation:<file> | example:jumping | example:split
        #[arg(long)]
        bundle: String,
        /// A linear form such as "x - z" or coefficients "1,0,-1".
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
    /// Samples lines and reports those whose splitting type differs from the generic one.
    ScanJumps {
        #[arg(long)]
        bundle: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Runs the seeded invariant suite.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
}

/// Parses a command line (including the program name) and runs it, returning the exit code and the
/// rendered output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let json = cli.json;
    match commands::execute(&cli) {
        Ok(report) => (0, report.render(json)),
        Err((report, err @ CliError::ChecksFailed(_))) => {
            let mut out = report.render(json);
            if !json {
                out += &format!("error: {err}\n");
            }
            (err.exit_code(), out)
        }
        Err((_, err)) => {
            let code = err.exit_code();
            let out = if json {
                report::error_json(&err.kind(), &err.to_string(), code)
            } else {
                format!("error: {err}\n")
            };
            (code, out)
        }
    }
}
