//! Deligne periods of the transcendental motive of the Fermat quartic.

use rug::Float;
use serde::Serialize;

use super::lvalue::checked_precision;
use crate::error::DeligneError;
use crate::hyperfun::{pi, pow10, theta_const, PrecComplex};
use crate::periods::legendre_frame;
use crate::pfode::{continue_solution, ContinuationPath, FuchsianOperator};
use crate::qseries::ThetaKind;
use crate::report::float_string;

/// Waypoints from the series disk to `lambda = 2` along which `varpi1/varpi0`
/// continues to `(-1+i)/2`. The mirror-image path through `Im lambda > 0`
/// ends at `(1+i)/2` instead.
pub const LAMBDA_TWO_PATH: &[(f64, f64)] = &[(0.1, 0.0), (0.1, -1.2), (2.0, 0.0)];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DelignePeriodSet {
    /// `c^+`, real.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub c_plus: PrecComplex,
    /// `c^-`, purely imaginary.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub c_minus: PrecComplex,
    /// `c^+` of the first Tate twist, `2 pi i c^-`.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub c_plus_tate1: PrecComplex,
    /// `c^+` of the second Tate twist, `(2 pi i)^2 c^+`.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub c_plus_tate2: PrecComplex,
    /// `theta_3^4` at the nome `q = -i e^(-pi/2)`.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub theta4: PrecComplex,
    /// `varpi0(2)^2` obtained by analytic continuation.
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub varpi0_two_squared: PrecComplex,
    /// `|varpi0(2)^2 - theta_3^4|`.
    #[serde(serialize_with = "crate::report::ser_float")]
    pub cross_check_residual: Float,
}

/// Nome `q = exp(pi i tau)` at `tau = (-1+i)/2`, i.e. `-i e^(-pi/2)`.
pub fn lambda_two_nome(bits: u32) -> PrecComplex {
    let e = Float::with_val(bits, -Float::with_val(bits, pi(bits) / 2u32)).exp();
    PrecComplex::new(Float::new(bits), -e)
}

/// `theta_3(0, -i e^(-pi/2))^4`.
pub fn theta3_fourth_at_lambda_two(bits: u32) -> Result<PrecComplex, DeligneError> {
    Ok(theta_const(ThetaKind::Three, &lambda_two_nome(bits))?.powi(4))
}

/// `varpi0(2)^2` by continuing the Legendre frame from `0.1`.
pub fn varpi0_two_squared(bits: u32) -> Result<PrecComplex, DeligneError> {
    let path = ContinuationPath::from_f64(bits, LAMBDA_TWO_PATH);
    let start = legendre_frame(path.start())?;
    let end = continue_solution(&FuchsianOperator::legendre(), &path, &start)?;
    Ok(end.value(0).square())
}

/// Builds the period set with `(s1, s2, s3, s4) = (0, 1, 1, 0)`:
/// `c^- = theta_3^4` and `c^+ = i theta_3^4`, so that
/// `c^+(M(1)) = 2 pi i theta_3^4` and `c^+(M(2)) = i (2 pi i)^2 theta_3^4`.
/// Fails when the continuation value of `varpi0(2)^2` disagrees with the
/// theta value by more than `10^-(D-15)`.
pub fn deligne_periods(digits: u32) -> Result<DelignePeriodSet, DeligneError> {
    let prec = checked_precision(digits)?;
    let bits = prec.bits();
    let theta4 = theta3_fourth_at_lambda_two(bits)?;
    let cont = varpi0_two_squared(bits)?;
    let residual = (&cont - &theta4).abs();
    let tol = pow10(bits, -(digits as i32) + 15);
    if residual > tol {
        return Err(DeligneError::CrossCheck {
            name: "varpi0(2)^2 vs theta_3^4".into(),
            residual: float_string(&Float::with_val(53, &residual)),
            tolerance: float_string(&Float::with_val(53, &tol)),
        });
    }
    let two_pi_i = PrecComplex::new(Float::new(bits), Float::with_val(bits, pi(bits) * 2u32));
    let c_minus = theta4.clone();
    let c_plus = theta4.mul_i();
    let c_plus_tate1 = &two_pi_i * &c_minus;
    let c_plus_tate2 = &two_pi_i.square() * &c_plus;
    Ok(DelignePeriodSet {
        c_plus,
        c_minus,
        c_plus_tate1,
        c_plus_tate2,
        theta4,
        varpi0_two_squared: cont,
        cross_check_residual: residual,
    })
}
