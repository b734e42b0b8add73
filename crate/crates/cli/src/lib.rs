//! Command-line front end: JSON I/O for diagram values, composition in a
//! named category, identity checking, normal forms, idempotent listings and
//! the acceptance suite.

use std::fs;
use std::io::{self, Read, Write};
use std::str::FromStr;

use thiserror::Error;

pub mod check;
pub mod compose;
pub mod json;
pub mod words;

pub use check::{cmd_check, CheckOptions, Strategy};
pub use compose::{cmd_compose, Category};
pub use words::{cmd_idempotents, cmd_normalform};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("unknown monoid {0:?}")]
    UnknownMonoid(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    /// 2 for usage and parse errors, 3 for shape and validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::UnknownMonoid(_) | CliError::Io { .. } => 2,
            CliError::Shape(_) | CliError::Invalid(_) => 3,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub filter: Option<String>,
    pub json: bool,
    pub seed: u64,
    pub extended: bool,
}

/// Runs the acceptance battery; exit code 1 if any entry fails.
pub fn cmd_suite(opts: &SuiteOptions, out: &mut impl Write) -> Result<i32, CliError> {
    let config = diagram_harness::Config { seed: opts.seed, filter: opts.filter.clone(), extended: opts.extended };
    let stdout_err = |source| CliError::Io { path: "<stdout>".to_string(), source };
    let report = if opts.json {
        diagram_harness::run_suite(&config)
    } else {
        writeln!(out, "seed {}", opts.seed).map_err(stdout_err)?;
        let mut failed = None;
        let report = diagram_harness::run_suite_with(&config, |e| {
            if let Err(err) = writeln!(out, "{}", e.line()) {
                failed.get_or_insert(err);
            }
        });
        if let Some(err) = failed {
            return Err(stdout_err(err));
        }
        report
    };
    if opts.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?).map_err(stdout_err)?;
    } else {
        let fails = report.entries.iter().filter(|e| e.status == diagram_harness::Status::Fail).count();
        writeln!(out, "{} entries, {fails} failed", report.entries.len()).map_err(stdout_err)?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

pub(crate) fn write_out(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|source| CliError::Io { path: "<stdout>".to_string(), source })
}

/// Splits `Name<n>` into `("Name", n)`.
pub(crate) fn split_size(s: &str) -> Option<(&str, usize)> {
    let cut = s.find(|c: char| c.is_ascii_digit())?;
    let (name, digits) = s.split_at(cut);
    Some((name, usize::from_str(digits).ok()?))
}
