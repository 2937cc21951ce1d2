//! Jacobi theta constants and the Dedekind eta function.
//!
//! Nome conventions: `q = exp(pi i tau)` feeds the theta constants, while
//! the bold nome `exp(2 pi i tau) = q^2` feeds eta and all modular-form
//! expansions. The two are never mixed implicitly; see [`nome`] and
//! [`nome_bold`].

use rug::Float;

use super::complex::PrecComplex;
use super::precision::pi;
use crate::error::NumericError;
use crate::qseries::ThetaKind;

/// `q = exp(pi i tau)`.
pub fn nome(tau: &PrecComplex) -> PrecComplex {
    let p = tau.prec();
    tau.mul_i().scale(&pi(p)).exp()
}

/// `exp(2 pi i tau)`.
pub fn nome_bold(tau: &PrecComplex) -> PrecComplex {
    let p = tau.prec();
    let two_pi = Float::with_val(p, pi(p) * 2u32);
    tau.mul_i().scale(&two_pi).exp()
}

fn small(bits: u32) -> Float {
    Float::with_val(bits, 1) >> (bits + 10)
}

/// Sums `t_0 + t_1 + ...` with `t_{n+1} = t_n * step_0 * q2^n`,
/// stopping when the remaining terms are below `2^-(bits+10)`.
fn lacunary_sum(
    first: PrecComplex,
    step0: PrecComplex,
    q2: &PrecComplex,
    qabs: f64,
    bits: u32,
) -> PrecComplex {
    let tol = small(bits);
    let mut sum = PrecComplex::zero(bits);
    let mut term = first;
    let mut step = step0;
    loop {
        sum += &term;
        term = &term * &step;
        step = &step * q2;
        // later terms shrink at least geometrically with ratio |q|
        let bound = term.abs() / (1.0 - qabs);
        if bound < tol {
            break;
        }
    }
    sum
}

/// Theta constant `theta_k(0, q)` for `|q| < 1`.
///
/// `theta_2` uses the principal fourth root of `q`; callers that start from
/// `tau` and need `exp(pi i tau / 4)` off the principal strip should use
/// [`theta_const_tau`].
pub fn theta_const(kind: ThetaKind, q: &PrecComplex) -> Result<PrecComplex, NumericError> {
    let bits = q.prec();
    let qabs = q.abs().to_f64();
    if qabs.is_nan() || qabs >= 1.0 {
        return Err(NumericError::NomeOutOfRange(qabs.to_string()));
    }
    if q.is_zero() {
        return Ok(match kind {
            ThetaKind::Two => PrecComplex::zero(bits),
            _ => PrecComplex::one(bits),
        });
    }
    let quarter = q.pow_rational(&rug::Rational::from((1, 4)));
    Ok(theta_with_root(kind, q, &quarter, qabs))
}

/// Theta constant evaluated from `tau`, with `q^(1/4) = exp(pi i tau / 4)`.
pub fn theta_const_tau(kind: ThetaKind, tau: &PrecComplex) -> Result<PrecComplex, NumericError> {
    if tau.im <= 0 {
        return Err(NumericError::NotInUpperHalfPlane(tau.im.to_string()));
    }
    let q = nome(tau);
    let quarter = nome(&tau.scale_rational(&rug::Rational::from((1, 4))));
    let qabs = q.abs().to_f64();
    Ok(theta_with_root(kind, &q, &quarter, qabs))
}

fn theta_with_root(
    kind: ThetaKind,
    q: &PrecComplex,
    quarter: &PrecComplex,
    qabs: f64,
) -> PrecComplex {
    let bits = q.prec();
    let q2 = q.square();
    match kind {
        ThetaKind::Two => {
            // 2 q^(1/4) sum q^(n(n+1)); ratio of consecutive exponents: q^(2n+2)
            let s = lacunary_sum(PrecComplex::one(bits), q2.clone(), &q2, qabs, bits);
            (quarter * &s).scale(&Float::with_val(bits, 2))
        }
        ThetaKind::Three | ThetaKind::Four => {
            // 1 + 2 sum_{n>=1} x^(n^2) with x = q (theta_3) or -q (theta_4);
            // x^((n+1)^2) = x^(n^2) x^(2n+1)
            let x = if kind == ThetaKind::Four { -q } else { q.clone() };
            let step0 = &q2 * &x;
            let s = lacunary_sum(x, step0, &q2, qabs, bits);
            let one = PrecComplex::one(bits);
            &one + &s.scale(&Float::with_val(bits, 2))
        }
    }
}

/// Dedekind eta `exp(2 pi i tau / 24) prod_{n>=1} (1 - e^(2 pi i n tau))`.
///
/// The product is truncated once `|q|^(n+1) / (1-|q|)^2` falls below
/// `2^-(bits+2)`, which bounds the relative tail.
pub fn eta_value(tau: &PrecComplex) -> Result<PrecComplex, NumericError> {
    if tau.im <= 0 {
        return Err(NumericError::NotInUpperHalfPlane(tau.im.to_string()));
    }
    let bits = tau.prec();
    let qb = nome_bold(tau);
    let prefactor = nome_bold(&tau.scale_rational(&rug::Rational::from((1, 24))));
    Ok(&prefactor * &euler_product(&qb, bits))
}

/// `prod_{n>=1} (1 - q^n)` with the tail bound of [`eta_value`].
pub fn euler_product(q: &PrecComplex, bits: u32) -> PrecComplex {
    let qabs = q.abs();
    let denom = {
        let one_minus = Float::with_val(bits, 1) - &qabs;
        Float::with_val(bits, one_minus.square_ref())
    };
    let tol = Float::with_val(bits, 1) >> (bits + 2);
    let one = PrecComplex::one(bits);
    let mut prod = PrecComplex::one(bits);
    let mut power = q.clone();
    loop {
        prod = &prod * &(&one - &power);
        power = &power * q;
        if Float::with_val(bits, power.abs() / &denom) < tol {
            break;
        }
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfun::precision::bits_for_digits;

    #[test]
    fn theta_at_zero() {
        let z = PrecComplex::zero(200);
        assert_eq!(theta_const(ThetaKind::Three, &z).unwrap(), PrecComplex::one(200));
        assert!(theta_const(ThetaKind::Two, &z).unwrap().is_zero());
    }

    #[test]
    fn nome_out_of_range() {
        let q = PrecComplex::from_f64(200, 0.6, 0.8);
        assert!(matches!(
            theta_const(ThetaKind::Three, &q),
            Err(NumericError::NomeOutOfRange(_))
        ));
    }

    #[test]
    fn jacobi_quartic_identity() {
        let bits = bits_for_digits(120);
        let q = PrecComplex::from_f64(bits, 0.3, 0.0);
        let t2 = theta_const(ThetaKind::Two, &q).unwrap().powi(4);
        let t3 = theta_const(ThetaKind::Three, &q).unwrap().powi(4);
        let t4 = theta_const(ThetaKind::Four, &q).unwrap().powi(4);
        let res = (&(&t2 + &t4) - &t3).abs();
        assert!(res < Float::with_val(bits, 1e-115), "{res}");
    }

    #[test]
    fn eta_tends_to_prefactor() {
        let bits = 512;
        let tau = PrecComplex::from_f64(bits, 0.1, 40.0);
        let e = eta_value(&tau).unwrap();
        let pre = nome_bold(&tau.scale_rational(&rug::Rational::from((1, 24))));
        let ratio = &e / &pre;
        let d = (&ratio - &PrecComplex::one(bits)).abs();
        assert!(d < Float::with_val(bits, 1e-100), "{d}");
    }

    #[test]
    fn eta_rejects_lower_half_plane() {
        let tau = PrecComplex::from_f64(128, 0.0, -1.0);
        assert!(eta_value(&tau).is_err());
    }
}
