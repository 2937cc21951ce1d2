use rug::float::Constant;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::NumericError;

/// Real scalar at working precision.
pub type PrecFloat = Float;

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 40;

/// Working precision in decimal digits. Values below 30 digits are rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 120;
    pub const MIN_DIGITS: u32 = 30;

    pub fn new(digits: u32) -> Result<Self, NumericError> {
        if digits < Self::MIN_DIGITS {
            return Err(NumericError::PrecisionTooLow(digits));
        }
        Ok(Precision { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Binary precision used for arithmetic, including guard bits.
    pub fn bits(self) -> u32 {
        bits_for_digits(self.digits)
    }

    /// `10^(-digits)`.
    pub fn epsilon(self) -> Float {
        pow10(self.bits(), -(self.digits as i32))
    }

    pub fn doubled(self) -> Self {
        Precision {
            digits: self.digits * 2,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            digits: Self::DEFAULT_DIGITS,
        }
    }
}

pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
}

/// `10^e` at `bits` of precision.
pub fn pow10(bits: u32, e: i32) -> Float {
    use rug::ops::Pow;
    Float::with_val(bits, Float::with_val(bits, 10).pow(e))
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

/// Parses a decimal string at the given precision.
pub fn parse_float(bits: u32, s: &str) -> Result<Float, NumericError> {
    Float::parse(s.trim())
        .map(|p| Float::with_val(bits, p))
        .map_err(|_| NumericError::Parse(s.to_string()))
}

/// Decimal rendering with `digits` significant digits.
pub fn to_decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(digits as usize))
}

/// Base-10 logarithm of `|x|` as an `f64`, `-inf` for zero. Used for
/// reporting residual magnitudes.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimum_digits_enforced() {
        assert_eq!(Precision::new(29), Err(NumericError::PrecisionTooLow(29)));
        assert_eq!(Precision::new(30).unwrap().digits(), 30);
        assert_eq!(Precision::default().digits(), 120);
    }

    #[test]
    fn bits_cover_digits() {
        let p = Precision::new(120).unwrap();
        assert!(p.bits() as f64 >= 120.0 * LOG2_10);
    }

    #[test]
    fn log10_of_power_of_ten() {
        let x = pow10(200, -57);
        assert!((log10_abs(&x) + 57.0).abs() < 1e-9);
    }
}
