//! Manifest-driven front end: loads a manifest, runs one command and
//! produces a canonical JSON report.

pub mod commands;
pub mod manifest;
pub mod report;
pub mod session;

use std::collections::BTreeMap;

use serde_json::{json, Value};

use qhelix::algebra::AlgebraError;
use qhelix::helix::HelixError;
use qhelix::modules::ModuleError;

pub use commands::{Outcome, Verdict};
pub use session::{Options, Session};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Fail(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Fail(_) => 1,
            CliError::Inconclusive(_) => 3,
        }
    }

    pub fn from_algebra(e: AlgebraError) -> CliError {
        let msg = e.to_string();
        match e {
            AlgebraError::TruncationExceeded { .. } | AlgebraError::NoStabilization { .. } => {
                CliError::Inconclusive(msg)
            }
            AlgebraError::Syntax(_) => CliError::Parse(msg),
            _ => CliError::Fail(msg),
        }
    }

    pub fn from_module(e: ModuleError) -> CliError {
        let msg = e.to_string();
        match e {
            ModuleError::WindowTooLarge { .. } | ModuleError::WindowTooShort => CliError::Inconclusive(msg),
            ModuleError::Algebra(a) => CliError::from_algebra(a),
            _ => CliError::Fail(msg),
        }
    }

    pub fn from_helix(e: HelixError) -> CliError {
        let msg = e.to_string();
        match e {
            HelixError::MissingNu => CliError::Usage(format!("{msg}; set [pipeline.quadric] nu in the manifest")),
            HelixError::WindowTooShort(_) => CliError::Inconclusive(msg),
            HelixError::Module(m) => CliError::from_module(m),
            HelixError::Algebra(a) => CliError::from_algebra(a),
            _ => CliError::Fail(msg),
        }
    }
}

/// A finished report and the process exit code it implies.
#[derive(Debug, Clone)]
pub struct Report {
    pub value: Value,
    pub exit_code: i32,
}

/// Splits `key=value` arguments.
pub fn parse_arguments(args: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for a in args {
        let (k, v) =
            a.split_once('=').ok_or_else(|| CliError::Usage(format!("argument {a:?} is not of the form key=value")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::Usage(format!("argument {k} given twice")));
        }
    }
    Ok(out)
}

/// Runs `command` on the manifest named or located by `manifest`.
/// Usage and parse errors are returned as `Err`; mathematical failures and
/// inconclusive checks still produce a report.
pub fn execute(manifest: &str, command: &str, args: &[String], opts: &Options) -> Result<Report, CliError> {
    let spec = commands::lookup(command)?;
    let args = parse_arguments(args)?;
    spec.check_keys(&args)?;
    let loaded = manifest::load(manifest)?;
    let session = Session::new(loaded, opts)?;
    let outcome = match (spec.run)(&session, &args) {
        Ok(o) => o,
        Err(e @ (CliError::Usage(_) | CliError::Parse(_))) => return Err(e),
        Err(CliError::Fail(m)) => Outcome::error(Verdict::Fail, m),
        Err(CliError::Inconclusive(m)) => Outcome::error(Verdict::Inconclusive, m),
    };
    let mut report = json!({
        "tool": "qhelix",
        "version": env!("CARGO_PKG_VERSION"),
        "manifest": { "name": session.loaded.name, "digest": session.loaded.digest },
        "command": command,
        "arguments": args,
        "bounds": {
            "truncation": session.truncation,
            "hbound": session.hbound,
            "window": session.window.map(|(a, b)| vec![a, b]),
            "field": session.field.label(),
        },
        "result": outcome.result,
        "verdict": outcome.verdict.label(),
    });
    // commands without their own table bound are valid up to the truncation
    let certified = outcome
        .certified_up_to
        .unwrap_or_else(|| session.working().map_or(session.truncation, |a| a.truncation()) as i32);
    report["certified_up_to_degree"] = json!(certified);
    Ok(Report { value: report, exit_code: outcome.verdict.exit_code() })
}

/// Parses `a..b`.
pub fn parse_window(s: &str) -> Result<(i32, i32), CliError> {
    let bad = || CliError::Usage(format!("window must look like -4..8, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse::<i32>().map_err(|_| bad())?, b.trim().parse::<i32>().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}
