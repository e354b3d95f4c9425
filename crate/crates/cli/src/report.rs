//! Report rendering: stable key=value text and byte-reproducible JSON.
//!
//! Every floating-point value is serialized as `{:.16e}` — 17 significant
//! digits, enough to round-trip any f64 — in both output modes, so
//! identical inputs and flags always produce identical bytes.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{Map, Number, Value};

use innerspace::{Scalar, ScalarField, Vector};

/// Normalizes −0.0 so the two float zeros print identically.
fn canon(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

pub fn fmt_f64(v: f64) -> String {
    format!("{:.16e}", canon(v))
}

/// A scalar rendered per the file convention: bare number over the reals,
/// `[re, im]` over the complexes.
pub fn scalar_value(field: ScalarField, z: Scalar) -> Value {
    if field.is_real() {
        float(z.re)
    } else {
        Value::Array(vec![float(z.re), float(z.im)])
    }
}

pub fn vector_value(field: ScalarField, v: &Vector) -> Value {
    Value::Array(v.iter().map(|&z| scalar_value(field, z)).collect())
}

pub fn float(v: f64) -> Value {
    Value::Number(Number::from_f64(canon(v)).expect("report values are finite"))
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

struct SciFormatter;

impl Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{:.16e}", canon(value))
    }
}

/// Serializes a report document with the fixed float format.
pub fn to_json_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization cannot fail");
    String::from_utf8(out).expect("serializer emits UTF-8")
}

/// Renders a JSON value in the compact text form used by key=value lines.
pub fn value_text(value: &Value) -> String {
    to_json_string(value)
}

/// Accumulates `key=value` lines.
#[derive(Default)]
pub struct TextReport {
    lines: Vec<String>,
}

impl TextReport {
    pub fn new() -> Self {
        TextReport::default()
    }

    pub fn push(&mut self, key: &str, value: impl AsRef<str>) {
        self.lines.push(format!("{key}={}", value.as_ref()));
    }

    pub fn push_f64(&mut self, key: &str, value: f64) {
        self.push(key, fmt_f64(value));
    }

    pub fn push_value(&mut self, key: &str, value: &Value) {
        self.push(key, value_text(value));
    }

    pub fn finish(self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_17_significant_digits() {
        assert_eq!(fmt_f64(0.75), "7.5000000000000000e-1");
        assert_eq!(fmt_f64(2.0), "2.0000000000000000e0");
        assert_eq!(fmt_f64(-0.0), "0.0000000000000000e0");
    }

    #[test]
    fn json_floats_use_the_same_format() {
        let v = object(vec![("x", float(0.5))]);
        assert_eq!(to_json_string(&v), "{\"x\":5.0000000000000000e-1}");
    }

    #[test]
    fn formatted_floats_round_trip() {
        for &x in &[std::f64::consts::PI, 1.0 / 3.0, 1e-300, -2.5e17] {
            let parsed: f64 = fmt_f64(x).parse().unwrap();
            assert_eq!(parsed, x);
        }
    }
}
