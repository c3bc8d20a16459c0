use std::fmt;
use std::str::FromStr;

use qvolume::{Convention, HalfInt, QuadrupleJ};
use serde::Deserialize;
use serde_json::Value;

/// Parameter sets of the bundled figure reproductions, as doubled values.
pub const PRESETS: [(&str, [i64; 4]); 4] = [
    ("fig3-left", [17, 21, 27, 29]),
    ("fig3-right", [34, 42, 54, 58]),
    ("fig4-left", [200, 220, 260, 280]),
    ("fig4-right", [240, 240, 240, 240]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Info,
    Spectrum,
    Caustics,
    Poly,
    Dynamics,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Spectrum => "spectrum",
            Command::Caustics => "caustics",
            Command::Poly => "poly",
            Command::Dynamics => "dynamics",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}' (expected json or csv)")),
        }
    }
}

/// One run, as given on the command line or as a line of a batch file.
/// Unset options take the defaults documented on the CLI flags.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: Option<Command>,
    #[serde(default, deserialize_with = "j_field")]
    pub j: Option<String>,
    pub preset: Option<String>,
    #[serde(default)]
    pub format: Format,
    pub samples: Option<usize>,
    #[serde(default)]
    pub eigenvectors: bool,
    pub k_index: Option<usize>,
    pub l0: Option<f64>,
    pub phi0: Option<f64>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub every: Option<usize>,
    pub convention: Option<String>,
    pub scan: Option<usize>,
}

/// Accepts `"8.5,10.5,13.5,14.5"` or an array of numbers or strings. Numbers
/// keep their literal text, so `1.25` is rejected later rather than rounded.
fn j_field<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    use serde::de::Error;
    let v = Option::<Value>::deserialize(d)?;
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(Value::Array(items)) => {
            let parts = items
                .into_iter()
                .map(|item| match item {
                    Value::Number(n) => Ok(n.to_string()),
                    Value::String(s) => Ok(s),
                    other => Err(D::Error::custom(format!("j entry {other} is not a number"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Some(parts.join(",")))
        }
        Some(other) => Err(D::Error::custom(format!("j must be a string or an array, got {other}"))),
    }
}

/// Input problems caught before any computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub reason: &'static str,
    pub message: String,
}

impl InputError {
    pub fn new(reason: &'static str, message: impl Into<String>) -> Self {
        InputError { reason, message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Parses one entry written as a plain decimal ending in `.0` or `.5`
/// (trailing zeros allowed, the fraction may be omitted for integers).
pub fn parse_half_integer(text: &str) -> Result<HalfInt, InputError> {
    let t = text.trim();
    let lattice = || InputError::new("lattice", format!("'{t}' is not a multiple of 1/2 written as a plain decimal"));
    let (negative, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac) = match body.split_once('.') {
        Some((_, "")) => return Err(lattice()),
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(lattice());
    }
    let half = match frac.trim_end_matches('0') {
        "" => 0,
        "5" => 1,
        _ => return Err(lattice()),
    };
    let whole: i64 = int_part
        .parse()
        .ok()
        .filter(|w: &i64| *w <= i64::MAX / 4)
        .ok_or_else(|| InputError::new("out_of_range", format!("'{t}' is too large")))?;
    let twice = 2 * whole + half;
    Ok(HalfInt::from_twice(if negative { -twice } else { twice }))
}

pub fn parse_quadruple(text: &str) -> Result<QuadrupleJ, InputError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(InputError::new(
            "arity",
            format!("expected four comma-separated values for j, got {}", parts.len()),
        ));
    }
    let mut j = [HalfInt::ZERO; 4];
    for (slot, part) in j.iter_mut().zip(parts) {
        *slot = parse_half_integer(part)?;
    }
    Ok(QuadrupleJ { j })
}

pub fn preset(name: &str) -> Result<QuadrupleJ, InputError> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| QuadrupleJ::from_twice(*t))
        .ok_or_else(|| {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            InputError::new("unknown_preset", format!("unknown preset '{name}' (one of {})", names.join(", ")))
        })
}

impl Request {
    pub fn quadruple(&self) -> Result<QuadrupleJ, InputError> {
        match (&self.j, &self.preset) {
            (Some(_), Some(_)) => Err(InputError::new("conflicting_input", "give either j or a preset, not both")),
            (Some(text), None) => parse_quadruple(text),
            (None, Some(name)) => preset(name),
            (None, None) => Err(InputError::new("missing_input", "one of j or preset is required")),
        }
    }

    pub fn convention(&self) -> Result<Convention, InputError> {
        match &self.convention {
            None => Ok(Convention::default()),
            Some(text) => text.parse().map_err(|m: String| InputError::new("invalid_argument", m)),
        }
    }
}
