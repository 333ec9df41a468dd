//! The JSON report every command prints.

use dualmat::Tolerances;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub tolerances: Tolerances,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Residual {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Residual {
            name: name.into(),
            value,
            tolerance,
            // NaN fails.
            pass: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
}

/// What a command produced before the report is assembled.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub result: Value,
    pub residuals: Vec<Residual>,
    /// The command's own yes/no answer (an order holds, predicates agree).
    /// Residuals are checked separately.
    pub verdict: bool,
}

impl Outcome {
    pub fn new(result: Value, residuals: Vec<Residual>, verdict: bool) -> Self {
        Outcome {
            result,
            residuals,
            verdict,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub config: Config,
    pub status: Status,
    pub exit_code: u8,
    pub error: Option<ErrorInfo>,
    pub result: Value,
    pub residuals: Vec<Residual>,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>, config: Config, outcome: Result<Outcome, CliError>, wall_time_ms: f64) -> Self {
        let (status, exit_code, error, result, residuals) = match outcome {
            Ok(o) => {
                let pass = o.verdict && o.residuals.iter().all(|r| r.pass);
                let (status, code) = if pass { (Status::Pass, 0) } else { (Status::Fail, 1) };
                (status, code, None, o.result, o.residuals)
            }
            Err(e) => {
                let info = ErrorInfo {
                    code: e.code(),
                    message: e.to_string(),
                };
                (Status::Error, e.exit_code(), Some(info), Value::Null, Vec::new())
            }
        };
        Report {
            command,
            config,
            status,
            exit_code,
            error,
            result,
            residuals,
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
