//! Request handling behind the `qvolume` binary.
//!
//! Every run produces one JSON document
//! `{schema_version, request, metadata, payload}`; failures produce the same
//! shape with `payload.error = {reason, message}` and a non-zero exit code.

pub mod commands;
pub mod format;
pub mod request;

use qvolume::{Error, QuadrupleJ};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

pub use request::{Command, Format, InputError, Request, PRESETS};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Why a run failed, before it is turned into an error document.
#[derive(Clone, Debug, PartialEq)]
pub enum Failure {
    Input(InputError),
    Library(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    pub fn reason(&self) -> &'static str {
        match self {
            Failure::Input(e) => e.reason,
            Failure::Library(e) => match e {
                Error::NonHalfIntegral { .. } => "non_half_integral",
                Error::NegativeJ { .. } => "negative_j",
                Error::ClosureViolated { .. } => "closure_violated",
                Error::DomainError { .. } => "domain_error",
                Error::ConvergenceFailure { .. } => "convergence_failure",
                Error::CoefficientVanishes { .. } => "coefficient_vanishes",
                Error::ZeroDivisor { .. } => "zero_divisor",
                Error::NormOverflow { .. } => "norm_overflow",
                Error::StepOutOfDomain { .. } => "step_out_of_domain",
                Error::NoRoots { .. } => "no_roots",
                Error::InvalidArgument(_) => "invalid_argument",
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(e) => e.message.clone(),
            Failure::Library(e) => e.to_string(),
        }
    }

    /// 2 for anything wrong with the input, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Library(e) => match e {
                Error::NonHalfIntegral { .. }
                | Error::NegativeJ { .. }
                | Error::ClosureViolated { .. }
                | Error::InvalidArgument(_) => EXIT_INPUT,
                _ => EXIT_NUMERICAL,
            },
        }
    }
}

/// A finished run: the JSON document, the CSV rendering when the run
/// succeeded, and the process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub csv: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    /// Text to write for `format`. Error documents are always JSON.
    pub fn render(&self, format: Format) -> String {
        match (&self.csv, format) {
            (Some(csv), Format::Csv) => csv.clone(),
            _ => {
                let mut text = serde_json::to_string_pretty(&self.document).expect("document serializes");
                text.push('\n');
                text
            }
        }
    }

    /// Single-line JSON, as used for batch output.
    pub fn compact(&self) -> String {
        serde_json::to_string(&self.document).expect("document serializes")
    }
}

fn request_echo(req: &Request, j: Option<&QuadrupleJ>, options: Map<String, Value>) -> Value {
    let mut echo = Map::new();
    echo.insert("command".into(), req.command.map_or(Value::Null, |c| json!(c.name())));
    match j {
        Some(j) => {
            echo.insert("j".into(), format::halves(&j.j));
            echo.insert("j_twice".into(), json!(j.twice()));
        }
        None => {
            echo.insert("j".into(), req.j.as_ref().map_or(Value::Null, |s| json!(s)));
        }
    }
    if let Some(p) = &req.preset {
        echo.insert("preset".into(), json!(p));
    }
    echo.insert("options".into(), Value::Object(options));
    Value::Object(echo)
}

fn error_document(req: &Request, j: Option<&QuadrupleJ>, failure: &Failure) -> Outcome {
    let document = json!({
        "schema_version": SCHEMA_VERSION,
        "request": request_echo(req, j, Map::new()),
        "metadata": Value::Null,
        "payload": {
            "error": {
                "reason": failure.reason(),
                "message": failure.message(),
            }
        },
    });
    Outcome { document, csv: None, exit_code: failure.exit_code() }
}

/// Runs one request.
pub fn run(req: &Request) -> Outcome {
    let j = match req.quadruple() {
        Ok(j) => j,
        Err(e) => return error_document(req, None, &e.into()),
    };
    match execute(req, &j) {
        Ok((metadata, built)) => Outcome {
            document: json!({
                "schema_version": SCHEMA_VERSION,
                "request": request_echo(req, Some(&j), built.options),
                "metadata": metadata,
                "payload": built.payload,
            }),
            csv: Some(built.csv),
            exit_code: EXIT_OK,
        },
        Err(f) => error_document(req, Some(&j), &f),
    }
}

fn execute(req: &Request, j: &QuadrupleJ) -> Result<(Value, commands::Built), Failure> {
    let command = req
        .command
        .ok_or_else(|| InputError::new("missing_command", "a command is required"))?;
    let metadata = commands::metadata(j)?;
    let built = match command {
        Command::Info => commands::info(j)?,
        Command::Spectrum => commands::spectrum(j, req)?,
        Command::Caustics => commands::caustics(j, req)?,
        Command::Poly => commands::poly(j, req)?,
        Command::Dynamics => commands::dynamics(j, req)?,
    };
    Ok((metadata, built))
}

/// Parses one batch line and runs it.
pub fn run_line(line: &str) -> Outcome {
    match serde_json::from_str::<Request>(line) {
        Ok(req) => run(&req),
        Err(e) => {
            let failure = Failure::Input(InputError::new("invalid_request", e.to_string()));
            let document = json!({
                "schema_version": SCHEMA_VERSION,
                "request": { "line": line },
                "metadata": Value::Null,
                "payload": { "error": { "reason": failure.reason(), "message": failure.message() } },
            });
            Outcome { document, csv: None, exit_code: failure.exit_code() }
        }
    }
}

/// Newline-delimited requests in, one compact JSON document per non-blank
/// line out, in input order. Lines are evaluated in parallel. The exit code
/// is the largest of the per-line codes.
pub fn run_batch(input: &str) -> (String, i32) {
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    let outcomes: Vec<Outcome> = lines.par_iter().map(|line| run_line(line)).collect();
    let mut out = String::new();
    let mut code = EXIT_OK;
    for o in &outcomes {
        out.push_str(&o.compact());
        out.push('\n');
        code = code.max(o.exit_code);
    }
    (out, code)
}
