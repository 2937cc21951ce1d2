//! Serializable verification reports.
//!
//! Multiprecision values are written as decimal strings carrying the full
//! requested precision, never as binary floats.

use rug::Float;
use serde::{Deserialize, Serialize, Serializer};

use crate::hyperfun::{to_decimal, PrecComplex};

const GUARD_BITS: u32 = 40;

/// Decimal digits to print for a value carried at `bits` of precision.
pub fn display_digits(bits: u32) -> u32 {
    ((bits.saturating_sub(GUARD_BITS)) as f64 * std::f64::consts::LOG10_2).floor().max(1.0) as u32
}

pub fn float_string(x: &Float) -> String {
    to_decimal(x, display_digits(x.prec()))
}

pub fn complex_strings(z: &PrecComplex) -> [String; 2] {
    [float_string(&z.re), float_string(&z.im)]
}

/// Serializes a complex value as `["re", "im"]`.
pub fn ser_complex<S: Serializer>(z: &PrecComplex, s: S) -> Result<S::Ok, S::Error> {
    complex_strings(z).serialize(s)
}

pub fn ser_float<S: Serializer>(x: &Float, s: S) -> Result<S::Ok, S::Error> {
    float_string(x).serialize(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Exact rational series identity: passes only on a zero residual.
    Exact,
    /// Numeric identity: passes when the residual is within tolerance.
    Numeric,
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub statement: String,
    pub kind: CheckKind,
    /// Truncation order of exact checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Number of coefficients actually compared.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compared_terms: Option<usize>,
    /// Evaluation points of numeric checks.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub points: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_zero: Option<bool>,
    pub residual: String,
    pub tolerance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One entry of a [`VerificationReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    pub pass: bool,
    /// Informational entries are recorded but never fail a run.
    pub informational: bool,
    /// Wall-clock seconds; only present when timing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub entries: Vec<ReportEntry>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        VerificationReport {
            tool: "k3periods".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            entries: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, entry: ReportEntry) {
        if !entry.informational && !entry.pass {
            self.pass = false;
        }
        self.entries.push(entry);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfun::bits_for_digits;

    #[test]
    fn digits_round_trip() {
        for d in [30, 50, 120, 300] {
            assert_eq!(display_digits(bits_for_digits(d)), d);
        }
    }

    #[test]
    fn informational_entries_do_not_fail() {
        let mut r = VerificationReport::new("x", serde_json::Value::Null);
        r.push(ReportEntry {
            name: "a".into(),
            pass: false,
            informational: true,
            seconds: None,
            data: serde_json::Value::Null,
        });
        assert!(r.pass);
        r.push(ReportEntry {
            name: "b".into(),
            pass: false,
            informational: false,
            seconds: None,
            data: serde_json::Value::Null,
        });
        assert!(!r.pass);
    }
}
