//! File formats, report formatting and command dispatch for the `dgql` binary.

pub mod commands;
pub mod parse;
pub mod report;

use std::fmt;
use std::path::PathBuf;

pub use commands::Command;
pub use report::Report;

/// Default truncation when neither `--truncate` nor `DGQL_TRUNCATE` is given.
pub const DEFAULT_TRUNCATION: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input line (exit 2).
    Syntax { line: usize, msg: String },
    /// Well-formed input violating an invariant (exit 3).
    Semantic { line: Option<usize>, msg: String },
    /// The command cannot run on this input (exit 3).
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } => 2,
            CliError::Semantic { .. } | CliError::Precondition(_) => 3,
        }
    }

    pub fn from_core(e: dgql_core::Error) -> Self {
        CliError::Semantic {
            line: None,
            msg: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Syntax { line, msg } => write!(f, "line {line}: syntax error: {msg}"),
            CliError::Semantic { line: Some(l), msg } => write!(f, "line {l}: {msg}"),
            CliError::Semantic { line: None, msg } => write!(f, "{msg}"),
            CliError::Precondition(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// One invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    pub truncation: u32,
    /// Command-specific default when `None`.
    pub degrees: Option<(i32, i32)>,
    pub machine: bool,
    pub seed: Option<u64>,
    pub d: i32,
}

impl Job {
    pub fn new(command: Command, inputs: Vec<PathBuf>) -> Self {
        Job {
            command,
            inputs,
            truncation: DEFAULT_TRUNCATION,
            degrees: None,
            machine: false,
            seed: None,
            d: 2,
        }
    }
}

/// Output streams and exit code of a finished job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs a job: 0 on success, 1 on a failed verification, 2 on a parse error,
/// 3 on a precondition failure.
pub fn execute(job: &Job) -> Outcome {
    if job.truncation == 0 {
        return Outcome {
            stdout: String::new(),
            stderr: "error: truncation must be at least 1\n".into(),
            code: 3,
        };
    }
    if let Some((a, b)) = job.degrees {
        if a > b {
            return Outcome {
                stdout: String::new(),
                stderr: format!("error: empty degree window {a}..{b}\n"),
                code: 3,
            };
        }
    }
    match commands::run(job) {
        Ok((report, passed)) => Outcome {
            stdout: report.render(job.machine),
            stderr: String::new(),
            code: if passed { 0 } else { 1 },
        },
        Err((path, e)) => Outcome {
            stdout: String::new(),
            stderr: match path {
                Some(p) => format!("error: {}: {e}\n", p.display()),
                None => format!("error: {e}\n"),
            },
            code: e.exit_code(),
        },
    }
}

/// Parses `a..b`.
pub fn parse_degrees(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected <a>..<b>, found `{s}`"))?;
    let a: i32 = a.parse().map_err(|_| format!("bad lower degree `{a}`"))?;
    let b: i32 = b.parse().map_err(|_| format!("bad upper degree `{b}`"))?;
    if a > b {
        return Err(format!("empty degree window {a}..{b}"));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_windows() {
        assert_eq!(parse_degrees("-2..0"), Ok((-2, 0)));
        assert!(parse_degrees("1..0").is_err());
        assert!(parse_degrees("3").is_err());
    }
}
