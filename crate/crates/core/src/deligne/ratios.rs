//! Rational reconstruction of `c^+ / L`.

use rug::{Float, Integer, Rational};
use serde::Serialize;

use super::lvalue::{fricke_residual, lvalue, LValueResult};
use super::motive::{deligne_periods, DelignePeriodSet};
use crate::error::DeligneError;
use crate::hyperfun::{pow10, Precision};
use crate::report::{complex_strings, float_string};

/// Denominator bound of the reconstruction.
pub const DENOMINATOR_BOUND: u64 = 1_000_000;

/// Sample points of the eta involution check.
pub const FRICKE_POINTS: [f64; 3] = [0.3, 0.7, 1.5];

/// Closest continued-fraction convergent to `x` with denominator at most
/// `bound` that lies within `tol`; `None` if no convergent qualifies.
pub fn rationalize(x: &Float, bound: u64, tol: &Float) -> Option<Rational> {
    let bits = x.prec();
    let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
    let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
    let mut y = x.clone();
    for _ in 0..64 {
        let a = Float::with_val(bits, y.floor_ref());
        let ai = a.to_integer()?;
        let h2 = Integer::from(&ai * &h1) + &h0;
        let k2 = Integer::from(&ai * &k1) + &k0;
        if k2 > bound {
            return None;
        }
        let r = Rational::from((h2.clone(), k2.clone()));
        if Float::with_val(bits, x - &r).abs() <= *tol {
            return Some(r);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = Float::with_val(bits, &y - &a);
        if frac.is_zero() {
            return None;
        }
        y = frac.recip();
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: String,
    pub tolerance: String,
    pub pass: bool,
}

/// Everything computed by [`verify_ratios`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeligneReport {
    pub theta4_value: [String; 2],
    #[serde(rename = "L1")]
    pub l1: String,
    #[serde(rename = "L2")]
    pub l2: String,
    pub c_plus_tate1: [String; 2],
    pub c_plus_tate2: [String; 2],
    pub ratio1: String,
    pub ratio2: String,
    pub digits: u32,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub periods: Option<DelignePeriodSet>,
    #[serde(skip)]
    pub lvalues: Option<(LValueResult, LValueResult)>,
}

fn check(name: &str, residual: &Float, tol: &Float) -> Check {
    Check {
        name: name.into(),
        residual: float_string(&Float::with_val(53, residual)),
        tolerance: float_string(&Float::with_val(53, tol)),
        pass: residual <= tol,
    }
}

/// `r_k = c^+(M(k)) / L(M(k), 0)` for `k = 1, 2`, reconstructed as rationals.
pub fn verify_ratios(digits: u32) -> Result<(Rational, Rational, DeligneReport), DeligneError> {
    if digits < 40 {
        return Err(DeligneError::TooFewDigits {
            requested: digits,
            min: 40,
        });
    }
    let bits = Precision::new(digits)?.bits();
    let mut checks = Vec::new();
    let fricke_tol = pow10(bits, -(digits as i32) + 10);
    for y in FRICKE_POINTS {
        let r = fricke_residual(&Float::with_val(bits, y))?;
        checks.push(check(&format!("eta involution at y = {y}"), &r, &fricke_tol));
    }
    if checks.iter().any(|c| !c.pass) {
        return Err(DeligneError::CrossCheck {
            name: "eta involution".into(),
            residual: checks.iter().map(|c| c.residual.clone()).collect::<Vec<_>>().join(", "),
            tolerance: float_string(&Float::with_val(53, &fricke_tol)),
        });
    }
    let (l1, l2) = rayon::join(|| lvalue(1, digits), || lvalue(2, digits));
    let (l1, l2) = (l1?, l2?);
    let periods = deligne_periods(digits)?;
    checks.push(check(
        "varpi0(2)^2 by continuation vs theta_3^4",
        &periods.cross_check_residual,
        &pow10(bits, -(digits as i32) + 15),
    ));
    let tol = pow10(bits, -(digits as i32) + 10);
    let mut ratios = Vec::new();
    for (c, l) in [(&periods.c_plus_tate1, &l1), (&periods.c_plus_tate2, &l2)] {
        // both twisted periods are real
        let imag_tol = pow10(bits, -(digits as i32) + 15);
        checks.push(check(
            &format!("Im c+(M({})) vanishes", l.s),
            &Float::with_val(bits, c.im.abs_ref()),
            &imag_tol,
        ));
        let x = Float::with_val(bits, &c.re / &l.value);
        let r = rationalize(&x, DENOMINATOR_BOUND, &tol).ok_or_else(|| DeligneError::Reconstruction {
            value: float_string(&x),
            bound: DENOMINATOR_BOUND,
            tolerance: float_string(&Float::with_val(53, &tol)),
        })?;
        let res = Float::with_val(bits, &x - &r).abs();
        checks.push(check(&format!("ratio {} = {r}", l.s), &res, &tol));
        ratios.push(r);
    }
    let r2 = ratios.pop().expect("two ratios");
    let r1 = ratios.pop().expect("two ratios");
    let report = DeligneReport {
        theta4_value: complex_strings(&periods.theta4),
        l1: float_string(&l1.value),
        l2: float_string(&l2.value),
        c_plus_tate1: complex_strings(&periods.c_plus_tate1),
        c_plus_tate2: complex_strings(&periods.c_plus_tate2),
        ratio1: r1.to_string(),
        ratio2: r2.to_string(),
        digits,
        checks,
        periods: Some(periods),
        lvalues: Some((l1, l2)),
    };
    Ok((r1, r2, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergents() {
        let bits = 200;
        let tol = Float::with_val(bits, 1e-40);
        let x = Float::with_val(bits, Rational::from((355, 113)));
        assert_eq!(rationalize(&x, 1000, &tol), Some(Rational::from((355, 113))));
        let x = Float::with_val(bits, -64);
        assert_eq!(rationalize(&x, 1000, &tol), Some(Rational::from(-64)));
        let pi = crate::hyperfun::pi(bits);
        assert_eq!(rationalize(&pi, 1_000_000, &tol), None);
    }
}
