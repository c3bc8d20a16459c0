//! Fixed number formatting shared by the JSON and CSV writers.

use qvolume::HalfInt;
use serde_json::{Number, Value};

/// Seventeen significant digits in scientific notation with a signed
/// exponent, enough to round-trip any `f64`, e.g. `1.0825317547305482e-1`.
pub fn real_text(x: f64) -> String {
    let text = format!("{x:.16e}");
    match text.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => text,
    }
}

/// A real as a JSON number with the fixed text; non-finite values become
/// `null`.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(real_text(x).parse::<Number>().expect("formatted float is a JSON number"))
}

pub fn reals(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| real(x)).collect())
}

pub fn opt_real(x: Option<f64>) -> Value {
    x.map_or(Value::Null, real)
}

/// An exact half-integer as a decimal JSON number (`8.5`, `2`, `-0.5`).
pub fn half(h: HalfInt) -> Value {
    Value::Number(h.to_string().parse::<Number>().expect("half-integer is a JSON number"))
}

pub fn halves(hs: &[HalfInt]) -> Value {
    Value::Array(hs.iter().map(|&h| half(h)).collect())
}

/// CSV cell text for a real; non-finite values are written as `nan`, `inf`
/// or `-inf`.
pub fn csv_real(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        real_text(x)
    }
}

/// Multi-section CSV: each section has its own header row, sections are
/// separated by one blank line.
#[derive(Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn section(&mut self, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) {
        if !self.out.is_empty() {
            self.out.push('\n');
        }
        self.out.push_str(&header.join(","));
        self.out.push('\n');
        for row in rows {
            self.out.push_str(&row.join(","));
            self.out.push('\n');
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
