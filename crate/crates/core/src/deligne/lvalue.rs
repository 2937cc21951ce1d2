//! Critical values `L(eta(4z)^6, s)` for `s = 1, 2`.

use rug::Float;
use serde::Serialize;

use crate::arith::eta46_coefficients;
use crate::error::DeligneError;
use crate::hyperfun::{eta_value, pi, pow10, tanh_sinh, PrecComplex, Precision};

/// Largest precision accepted by [`lvalue`].
pub const MAX_DIGITS: u32 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    /// Mellin integral split at `z = 1/4` and integrated term by term.
    TermwiseGamma,
    /// Direct tanh-sinh quadrature of `int eta(4iz)^6 z^(s-1) dz`.
    Quadrature,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LValueResult {
    pub s: u32,
    #[serde(serialize_with = "crate::report::ser_float")]
    pub value: Float,
    pub method: LMethod,
    #[serde(serialize_with = "crate::report::ser_float")]
    pub error_estimate: Float,
    /// Series terms (termwise) or integrand evaluations (quadrature).
    pub work: usize,
}

pub(crate) fn checked_precision(digits: u32) -> Result<Precision, DeligneError> {
    if digits > MAX_DIGITS {
        return Err(DeligneError::PrecisionBudget {
            requested: digits,
            max: MAX_DIGITS,
        });
    }
    Ok(Precision::new(digits)?)
}

fn check_s(s: u32) -> Result<(), DeligneError> {
    if s == 1 || s == 2 {
        Ok(())
    } else {
        Err(DeligneError::UnsupportedS(s))
    }
}

/// `L(eta(4z)^6, s)` by the termwise method.
pub fn lvalue(s: u32, digits: u32) -> Result<LValueResult, DeligneError> {
    lvalue_with(s, digits, LMethod::TermwiseGamma)
}

pub fn lvalue_with(s: u32, digits: u32, method: LMethod) -> Result<LValueResult, DeligneError> {
    check_s(s)?;
    let prec = checked_precision(digits)?;
    match method {
        LMethod::TermwiseGamma => Ok(termwise(s, prec)),
        LMethod::Quadrature => quadrature(s, prec),
    }
}

/// `L(s) = (2 pi)^s / Gamma(s) * I_s` with
/// `I_s = int_{1/4}^inf f(iz) (z^(s-1) + 4 * 16^(1-s) z^(2-s)) dz`, where the
/// piece below `1/4` has been folded over by `z -> 1/(16z)` using
/// `eta(i/(4y))^6 = 64 y^3 eta(4iy)^6`. With `a = 2 pi n` and `x = a/4`,
/// `int_{1/4}^inf e^(-az) dz = e^(-x)/a` and
/// `int_{1/4}^inf z e^(-az) dz = (1+x) e^(-x)/a^2`.
fn termwise(s: u32, prec: Precision) -> LValueResult {
    let bits = prec.bits();
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    // e^(-pi n / 2) n < 2^-bits
    let nmax = ((bits as f64 + 20.0) * std::f64::consts::LN_2 / (std::f64::consts::PI / 2.0) + 20.0) as u64;
    let b = eta46_coefficients(nmax);
    let mut sum = Float::new(bits);
    let mut terms = 0;
    let mut last = Float::new(bits);
    for (n, bn) in b.iter().enumerate().skip(1) {
        if *bn == 0 {
            continue;
        }
        terms += 1;
        let a = Float::with_val(bits, &two_pi * n as u64);
        let x = Float::with_val(bits, &a / 4u32);
        let e = Float::with_val(bits, (-x.clone()).exp());
        let a2 = Float::with_val(bits, a.square_ref());
        let first = Float::with_val(bits, &e / &a);
        let second = Float::with_val(bits, (x + 1u32) * &e) / &a2;
        let term = if s == 1 {
            first + second * 4u32
        } else {
            second + first / 4u32
        };
        last = Float::with_val(bits, &term * *bn);
        sum += &last;
    }
    let factor = if s == 1 { two_pi.clone() } else { Float::with_val(bits, two_pi.square_ref()) };
    let value = sum * &factor;
    LValueResult {
        s,
        value,
        method: LMethod::TermwiseGamma,
        error_estimate: last.abs() * factor + (Float::with_val(bits, 1) >> (bits - 8)),
        work: terms,
    }
}

/// `eta(4iz)^6 = e^(-2 pi z) prod (1 - e^(-8 pi n z))^6` on the imaginary
/// axis, from the Euler product. Terms are dropped once `e^(-8 pi n z)`
/// falls below `2^-bits`.
pub fn eta46_on_axis(z: &Float, bits: u32) -> Float {
    let q = Float::with_val(bits, Float::with_val(bits, pi(bits) * -8i32) * z).exp();
    let tol = Float::with_val(bits, 1) >> (bits + 8);
    let mut prod = Float::with_val(bits, 1);
    let mut power = q.clone();
    while power > tol {
        prod *= Float::with_val(bits, 1u32 - &power);
        power *= &q;
    }
    let pre = Float::with_val(bits, Float::with_val(bits, pi(bits) * -2i32) * z).exp();
    let p2 = Float::with_val(bits, prod.square_ref());
    let p6 = Float::with_val(bits, &p2 * &p2) * p2;
    pre * p6
}

/// Direct quadrature over `[z_lo, z_hi]`. Below `z_lo` the integrand is
/// smaller than `10^-(D+10)`: by the eta involution `f(i/(16u)) = 64u^3 f(iu)`
/// and `f(iu) <= e^(-2 pi u)` for `u >= 1`, so `z_lo = 1/(16 u_0)` with
/// `e^(-2 pi u_0) 64 u_0^3 < 10^-(D+10)`. Above `z_hi` the tail
/// `e^(-2 pi z) z` is below the same threshold.
fn quadrature(s: u32, prec: Precision) -> Result<LValueResult, DeligneError> {
    let bits = prec.bits();
    let target = (prec.digits() + 10) as f64 * std::f64::consts::LN_10;
    let mut u0 = 1.0f64;
    while 2.0 * std::f64::consts::PI * u0 - (64.0 * u0.powi(3)).ln() < target {
        u0 += 0.5;
    }
    let mut z_hi = 1.0f64;
    while 2.0 * std::f64::consts::PI * z_hi - z_hi.ln() < target {
        z_hi += 0.5;
    }
    let z_lo = Float::with_val(bits, Float::with_val(bits, 16.0 * u0).recip());
    let tol = pow10(bits, -(prec.digits() as i32) - 5);
    let integrand = |z: &Float| {
        let f = eta46_on_axis(z, bits);
        if s == 2 {
            f * z
        } else {
            f
        }
    };
    // break points where the integrand changes character
    let cuts = [
        z_lo,
        Float::with_val(bits, 0.0625),
        Float::with_val(bits, 0.25),
        Float::with_val(bits, 1),
        Float::with_val(bits, 4),
        Float::with_val(bits, z_hi),
    ];
    let mut total = Float::new(bits);
    let mut err = Float::new(bits);
    let mut work = 0;
    for w in cuts.windows(2) {
        let r = tanh_sinh(integrand, &w[0], &w[1], &tol, 14)?;
        total += &r.value;
        err += &r.error_estimate;
        work += r.evaluations;
    }
    let two_pi = Float::with_val(bits, pi(bits) * 2u32);
    let factor = if s == 1 { two_pi.clone() } else { Float::with_val(bits, two_pi.square_ref()) };
    Ok(LValueResult {
        s,
        value: total * &factor,
        method: LMethod::Quadrature,
        error_estimate: err * factor,
        work,
    })
}

/// Relative residual of `eta(i/(4y))^6 = 64 y^3 eta(4iy)^6` at real `y > 0`,
/// both sides from the complex eta product.
pub fn fricke_residual(y: &Float) -> Result<Float, DeligneError> {
    let bits = y.prec();
    let lhs = eta_value(&PrecComplex::new(Float::new(bits), Float::with_val(bits, y * 4u32).recip()))?.powi(6);
    let rhs = eta_value(&PrecComplex::new(Float::new(bits), Float::with_val(bits, y * 4u32)))?
        .powi(6)
        .scale(&Float::with_val(bits, Float::with_val(bits, y.square_ref()) * y * 64u32));
    Ok((&lhs - &rhs).abs() / rhs.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_other_s() {
        assert!(matches!(lvalue(3, 50), Err(DeligneError::UnsupportedS(3))));
        assert!(matches!(lvalue(1, MAX_DIGITS + 1), Err(DeligneError::PrecisionBudget { .. })));
    }

    #[test]
    fn axis_product_matches_complex_eta() {
        let bits = 200;
        let z = Float::with_val(bits, 0.3);
        let tau = PrecComplex::new(Float::new(bits), Float::with_val(bits, &z * 4u32));
        let want = eta_value(&tau).unwrap().powi(6);
        let got = eta46_on_axis(&z, bits);
        assert!(Float::with_val(bits, &got - &want.re).abs() < 1e-50);
        assert!(want.im.clone().abs() < 1e-50);
    }

    #[test]
    fn fricke_holds() {
        let bits = Precision::new(60).unwrap().bits();
        for y in [0.3, 0.7, 1.5] {
            let r = fricke_residual(&Float::with_val(bits, y)).unwrap();
            assert!(r < 1e-50, "y = {y}: {r}");
        }
    }
}
