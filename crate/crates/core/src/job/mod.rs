//! JSON jobs: one command with its ring and payload in, a machine-readable
//! result, an itemized report and an exit code out.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 parse or schema
//! error, 3 precondition violation.

mod commands;
pub mod schema;
mod suite;

pub use suite::{paper_suite, SuiteCase};

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Error;
use crate::report::Report;
use crate::ring::Ring;

pub const COMMANDS: &[&str] = &[
    "verify-loop",
    "verify-homotopy",
    "loop-mul",
    "winding",
    "eta",
    "oracle",
    "decompose-nil",
    "connect-identity",
    "contract-nil",
    "lift-nil",
    "injectivity-homotopy",
    "swan-weibel",
    "basepoint-shift",
    "product-split",
    "gamma-mul",
    "complete",
    "gamma-equiv",
    "quillen-check",
    "circle-degree",
    "paper-suite",
];

pub const DEFAULT_SAMPLES: usize = 4096;

/// Settings shared by all commands; CLI flags override the job's own.
#[derive(Debug, Clone, Default)]
pub struct JobOptions {
    pub ring: Option<Value>,
    pub samples: Option<usize>,
    pub refine_width: Option<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct JobOutcome {
    pub command: String,
    pub status: Status,
    pub exit_code: i32,
    pub result: Value,
    pub checks: Report,
    pub summary: String,
}

impl JobOutcome {
    fn from_error(command: &str, e: &Error) -> Self {
        let checks = match e {
            Error::Rejected(r) | Error::PreconditionFailed(r) => r.clone(),
            _ => Report::new(),
        };
        JobOutcome {
            command: command.to_string(),
            status: Status::Error,
            exit_code: exit_code(e),
            result: Value::Null,
            checks,
            summary: e.to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("outcome serializes")
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Schema(_) | Error::UnboundVariable(_) | Error::InvalidDescriptor(_) => 2,
        Error::Rejected(_)
        | Error::Verification(_)
        | Error::NotUnimodular(_)
        | Error::DecompositionMismatch { .. }
        | Error::Internal(_) => 1,
        Error::Precondition(_)
        | Error::PreconditionFailed(_)
        | Error::NotCongruent(_)
        | Error::NotSpecial(_)
        | Error::NotAUnit(_)
        | Error::IncompatibleRings { .. }
        | Error::WrongLift(_)
        | Error::UnknownUnimodular(_)
        | Error::RefineNeeded(_) => 3,
    }
}

/// Parsed job header handed to the command implementations.
pub(crate) struct Ctx<'a> {
    pub ring: Ring,
    pub payload: &'a Map<String, Value>,
    pub samples: usize,
    pub refine_width: Option<BigRational>,
}

fn prepare<'a>(job: &'a Value, opts: &JobOptions) -> crate::error::Result<(String, Ctx<'a>)> {
    let obj = schema::as_object(job, "job")?;
    let command = schema::str_field(obj, "command", "")?.to_string();
    if !COMMANDS.contains(&command.as_str()) {
        return Err(Error::Schema(format!("unknown command `{command}`")));
    }
    let ring = match (&opts.ring, obj.get("ring")) {
        (Some(r), _) | (None, Some(r)) => schema::parse_ring(r)?,
        (None, None) if command == "circle-degree" => Ring::circle(),
        (None, None) => Ring::rationals(),
    };
    let options = match obj.get("options") {
        Some(v) => schema::as_object(v, "options")?.clone(),
        None => Map::new(),
    };
    let samples = match (opts.samples, options.get("samples")) {
        (Some(n), _) => n,
        (None, Some(v)) => v
            .as_u64()
            .ok_or_else(|| Error::Schema("`samples` must be a positive integer".into()))?
            as usize,
        (None, None) => DEFAULT_SAMPLES,
    };
    let refine_width = match (&opts.refine_width, options.get("refine_width")) {
        (Some(w), _) => Some(w.clone()),
        (None, Some(Value::String(s))) => Some(schema::parse_rational(s)?),
        (None, Some(_)) => return Err(Error::Schema("`refine_width` must be a rational string".into())),
        (None, None) => None,
    };
    Ok((
        command,
        Ctx {
            ring,
            payload: obj,
            samples,
            refine_width,
        },
    ))
}

/// Runs one job.
pub fn run_job(job: &Value, opts: &JobOptions) -> JobOutcome {
    let command = job.get("command").and_then(Value::as_str).unwrap_or("").to_string();
    let (command, ctx) = match prepare(job, opts) {
        Ok(x) => x,
        Err(e) => return JobOutcome::from_error(&command, &e),
    };
    match commands::dispatch(&command, &ctx) {
        Ok((result, checks)) => {
            let ok = checks.is_ok();
            JobOutcome {
                summary: checks.to_string(),
                command,
                status: if ok { Status::Pass } else { Status::Fail },
                exit_code: if ok { 0 } else { 1 },
                result,
                checks,
            }
        }
        Err(e) => JobOutcome::from_error(&command, &e),
    }
}

/// Parses the job text first; malformed JSON is a schema error.
pub fn run_job_str(text: &str, opts: &JobOptions) -> JobOutcome {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => run_job(&v, opts),
        Err(e) => JobOutcome::from_error(
            "",
            &Error::Parse {
                msg: format!("invalid JSON: {e}"),
                line: e.line(),
                column: e.column(),
            },
        ),
    }
}
