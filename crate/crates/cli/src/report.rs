//! Flat JSON report written to standard output.

use indexmap::IndexMap;
use serde::ser::Error as _;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

pub const SCHEMA_VERSION: &str = "1";

/// One scalar entry of a report.
///
/// Reals are written in scientific notation with 17 significant digits,
/// which round-trips every finite `f64`. Non-finite reals become `null`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Bool(bool),
    Int(i64),
    Num(f64),
    Text(String),
    Missing(#[serde(deserialize_with = "nan_from_null")] f64),
}

fn nan_from_null<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    <()>::deserialize(d).map(|_| f64::NAN)
}

impl Field {
    pub fn num(v: f64) -> Self {
        if v.is_finite() {
            Field::Num(v)
        } else {
            Field::Missing(v)
        }
    }

    #[cfg(test)]
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Field::Num(v) | Field::Missing(v) => Some(v),
            Field::Int(v) => Some(v as f64),
            _ => None,
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Bool(b) => s.serialize_bool(*b),
            Field::Int(i) => s.serialize_i64(*i),
            Field::Text(t) => s.serialize_str(t),
            Field::Missing(_) => s.serialize_unit(),
            Field::Num(v) if !v.is_finite() => s.serialize_unit(),
            Field::Num(v) => RawValue::from_string(format!("{v:.16e}"))
                .map_err(S::Error::custom)?
                .serialize(s),
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::num(v)
    }
}
impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}
impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v.into())
    }
}
impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}
impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}
impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_owned())
    }
}
impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub inputs: IndexMap<String, Field>,
    pub outputs: IndexMap<String, Field>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            command: command.to_owned(),
            inputs: IndexMap::new(),
            outputs: IndexMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Field>) -> &mut Self {
        self.inputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Field>) -> &mut Self {
        self.outputs.insert(key.to_owned(), value.into());
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are always serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        let mut r = Report::new("bound");
        r.input("n", 4u32).input("eps", 0.1).input("kind", "envelope");
        r.output("h", 0.45060016208475705)
            .output("tiny", -1.2345678901234567e-300)
            .output("ok", true)
            .output("whole", 3.0)
            .output("nan", f64::NAN);
        r.warn("something");
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back.inputs, r.inputs);
        assert_eq!(back.outputs.get_index_of("nan"), Some(4));
        assert!(back.outputs["nan"].as_f64().unwrap().is_nan());
        for key in ["h", "tiny", "whole"] {
            assert_eq!(back.outputs[key], r.outputs[key], "{key}");
        }
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn reals_have_seventeen_significant_digits() {
        let mut r = Report::new("x");
        r.output("v", 0.1);
        assert!(r.to_json().contains("1.0000000000000001e-1"));
    }

    #[test]
    fn field_order_is_insertion_order() {
        let mut r = Report::new("x");
        r.output("zeta", 1u32).output("alpha", 2u32);
        let text = r.to_json();
        assert!(text.find("zeta").unwrap() < text.find("alpha").unwrap());
    }
}
