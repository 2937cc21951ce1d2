//! Registry of identities, each checked by computing both sides
//! independently.

use rayon::prelude::*;
use rug::{Float, Rational};

use super::dwork::dwork_periods;
use super::lambda::lambda_q_series;
use super::legendre::varpi0_series;
use super::quadratic::{qt1_sides, qt2_sides, qt3_sides, quad_map, QuadMap};
use super::triple::{bps_series, pi0_series, pi_triple};
use crate::error::{PeriodError, SeriesError};
use crate::hyperfun::{eta_value, pow10, theta_const_tau, PrecComplex, Precision};
use crate::qseries::{eta_product, theta_series, RationalSeries, ThetaKind};
use crate::report::{complex_strings, float_string, CheckKind, IdentityReport};

/// Identifiers accepted by [`check_identity`], with their statements.
pub const IDENTITIES: &[(&str, &str)] = &[
    ("QT1", "2F1(1/2,1/2;1;z) = (1-z)^(-1/4) 2F1(1/4,1/4;1;z^2/(4z-4))"),
    ("QT2", "2F1(1/4,1/4;1;z) = (1-z)^(-1/4) 2F1(1/8,3/8;1;-4z/(1-z)^2)"),
    ("QT3", "2F1(1/2,1/2;1;z) = (1-z/2)^(-1/2) 2F1(1/8,3/8;1;-16(z-1)z^2/(z-2)^4)"),
    ("THETA-V", "varpi0(lambda(q)) = theta3(q)^2"),
    ("THETA-24", "lambda varpi0^2 = theta2^4 and (1-lambda) varpi0^2 = theta4^4"),
    ("DLDTAU", "q d(lambda)/dq = lambda (1-lambda) varpi0^2"),
    ("DELTA-THETA", "eta(tau)^24 = 2^-8 theta2^8 theta3^8 theta4^8"),
    ("DELTA-LAMBDA", "q^2 prod(1-q^(2n))^24 = (1/4) lambda^2 (1-lambda)^2 (lambda-2)^-6 Pi0^6"),
    ("BPS", "1/eta^24 (bold nome q^2) = 4 (lambda-2)^6 / (lambda^2 (1-lambda)^2 Pi0^6)"),
    ("W-PI", "W0(psi(lambda)) = Pi0(lambda) and W1(psi(lambda)) = Pi1(lambda)"),
];

/// Default sample points of the numeric identities.
pub fn default_points(id: &str, bits: u32) -> Vec<PrecComplex> {
    match id {
        "DELTA-THETA" => vec![
            PrecComplex::from_f64(bits, 0.0, 1.0),
            PrecComplex::from_f64(bits, 0.5, 1.5),
        ],
        "W-PI" => vec![
            PrecComplex::from_rational(bits, &Rational::from((1, 20))),
            PrecComplex::new(Float::new(bits), Float::with_val(bits, Rational::from((1, 10)))),
            PrecComplex::new(
                Float::with_val(bits, Rational::from((1, 5))),
                Float::with_val(bits, Rational::from((-1, 10))),
            ),
        ],
        _ => Vec::new(),
    }
}

fn statement(id: &str) -> Result<&'static str, PeriodError> {
    IDENTITIES
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, s)| *s)
        .ok_or_else(|| PeriodError::UnknownIdentity(id.to_string()))
}

/// Checks identity `id`. Exact identities are compared as rational series
/// through `q^order` (or `z^order`); numeric ones at their default points.
pub fn check_identity(id: &str, order: usize, prec: Precision) -> Result<IdentityReport, PeriodError> {
    let bits = prec.bits();
    match id {
        "DELTA-THETA" | "W-PI" => check_identity_at(id, &default_points(id, bits), prec),
        _ => check_exact(id, order),
    }
}

fn exact_report(
    id: &str,
    order: usize,
    pairs: &[(RationalSeries, RationalSeries)],
) -> Result<IdentityReport, PeriodError> {
    let mut residual = Rational::new();
    let mut compared = usize::MAX;
    let mut zero = true;
    for (lhs, rhs) in pairs {
        let d = lhs.try_sub(rhs)?;
        compared = compared.min(d.order());
        for c in d.coeffs() {
            let a = Rational::from(c.abs_ref());
            if a > residual {
                residual = a;
            }
        }
        zero &= d.is_zero();
    }
    let enough = compared >= order;
    Ok(IdentityReport {
        id: id.to_string(),
        statement: statement(id)?.to_string(),
        kind: CheckKind::Exact,
        order: Some(order),
        compared_terms: Some(compared),
        points: Vec::new(),
        exact_zero: Some(zero),
        residual: residual.to_string(),
        tolerance: "0".to_string(),
        pass: zero && enough,
        note: (!enough).then(|| format!("only {compared} coefficients could be compared")),
    })
}

fn one_minus(s: &RationalSeries) -> Result<RationalSeries, SeriesError> {
    RationalSeries::one(s.order() + 2).try_sub(s)
}

fn check_exact(id: &str, order: usize) -> Result<IdentityReport, PeriodError> {
    let pairs = match id {
        "QT1" => vec![qt1_sides(order)?],
        "QT2" => vec![qt2_sides(order)?],
        "QT3" => vec![qt3_sides(order)?],
        "THETA-V" | "THETA-24" | "DLDTAU" => {
            let lam = lambda_q_series(order)?;
            let v0 = varpi0_series(order + 1).compose(&lam)?;
            let v0sq = v0.mul(&v0);
            match id {
                "THETA-V" => {
                    let t3 = theta_series(ThetaKind::Three, order + 1);
                    vec![(v0, t3.mul(&t3))]
                }
                "THETA-24" => vec![
                    (lam.mul(&v0sq), theta_series(ThetaKind::Two, order + 1).powi(4)?),
                    (one_minus(&lam)?.mul(&v0sq), theta_series(ThetaKind::Four, order + 1).powi(4)?),
                ],
                _ => vec![(lam.theta(), lam.mul(&one_minus(&lam)?).mul(&v0sq))],
            }
        }
        "DELTA-LAMBDA" => {
            let lam = lambda_q_series(order + 2)?;
            let delta = eta_product(1, 24, order / 2 + 2).inflate(2);
            vec![(delta, delta_from_lambda(&lam, order + 2)?)]
        }
        "BPS" => {
            // q-order 2 * order compares `order` coefficients in the bold nome
            let lam = lambda_q_series(2 * order + 4)?;
            let lhs = bps_series(order + 1)?.inflate(2);
            let rhs = delta_from_lambda(&lam, 2 * order + 4)?.reciprocal()?;
            vec![(lhs, rhs)]
        }
        _ => return Err(PeriodError::UnknownIdentity(id.to_string())),
    };
    exact_report(id, order, &pairs)
}

/// `(1/4) lambda^2 (1-lambda)^2 (lambda-2)^-6 Pi0(lambda)^6` with `lambda = lambda(q)`.
fn delta_from_lambda(lam: &RationalSeries, order: usize) -> Result<RationalSeries, SeriesError> {
    let p0 = pi0_series(order + 1).compose(lam)?;
    let two = RationalSeries::constant(Rational::from(2), order + 2);
    let lm2 = lam.try_sub(&two)?.powi(-6)?;
    let om = one_minus(lam)?;
    Ok(lam
        .mul(lam)
        .mul(&om.mul(&om))
        .mul(&lm2)
        .mul(&p0.powi(6)?)
        .scale(&Rational::from((1, 4))))
}

/// Checks a numeric identity at the given points.
pub fn check_identity_at(
    id: &str,
    points: &[PrecComplex],
    prec: Precision,
) -> Result<IdentityReport, PeriodError> {
    let bits = prec.bits();
    let tol = pow10(bits, -(prec.digits() as i32) + 15);
    let points: Vec<PrecComplex> = points.iter().map(|p| p.with_prec(bits)).collect();
    let (residuals, note): (Vec<Float>, Option<String>) = match id {
        "DELTA-THETA" => {
            let r = points
                .par_iter()
                .map(delta_theta_residual)
                .collect::<Result<Vec<_>, PeriodError>>()?;
            (r, None)
        }
        "W-PI" => {
            let r = points
                .par_iter()
                .map(w_pi_residual)
                .collect::<Result<Vec<_>, PeriodError>>()?;
            let ratios: Vec<String> = r
                .iter()
                .map(|(_, ratio)| {
                    let [re, im] = complex_strings(&ratio.with_prec(bits.min(120)));
                    format!("({re}, {im})")
                })
                .collect();
            (
                r.into_iter().map(|(res, _)| res).collect(),
                Some(format!("W2/Pi2 recorded, not asserted: {}", ratios.join("; "))),
            )
        }
        _ => {
            statement(id)?;
            return Err(PeriodError::UnknownIdentity(format!("{id} is not a numeric identity")));
        }
    };
    let worst = residuals
        .iter()
        .fold(Float::new(bits), |a, r| if *r > a { r.clone() } else { a });
    Ok(IdentityReport {
        id: id.to_string(),
        statement: statement(id)?.to_string(),
        kind: CheckKind::Numeric,
        order: None,
        compared_terms: None,
        points: points.iter().map(complex_strings).collect(),
        exact_zero: None,
        residual: float_string(&Float::with_val(53, &worst)),
        tolerance: float_string(&Float::with_val(53, &tol)),
        pass: worst <= tol,
        note,
    })
}

/// Relative residual of `eta^24 = 2^-8 (theta2 theta3 theta4)^8` at `tau`.
pub fn delta_theta_residual(tau: &PrecComplex) -> Result<Float, PeriodError> {
    let bits = tau.prec();
    let lhs = eta_value(tau)?.powi(24);
    let t2 = theta_const_tau(ThetaKind::Two, tau)?;
    let t3 = theta_const_tau(ThetaKind::Three, tau)?;
    let t4 = theta_const_tau(ThetaKind::Four, tau)?;
    let rhs = (&(&t2 * &t3) * &t4).powi(8).scale(&(Float::with_val(bits, 1) >> 8u32));
    Ok((&lhs - &rhs).abs() / lhs.abs())
}

/// Residual `max(|W0 - Pi0|, |W1 - Pi1|)` and the ratio `W2/Pi2` at `lambda`.
pub fn w_pi_residual(lambda: &PrecComplex) -> Result<(Float, PrecComplex), PeriodError> {
    let psi = match quad_map(lambda) {
        QuadMap::Point { psi, .. } => psi,
        QuadMap::Pole => return Err(PeriodError::QuadMapPole),
        QuadMap::PsiInfinite { .. } => {
            return Err(crate::error::NumericError::OutsideDisk(format!("{lambda:.20}")).into())
        }
    };
    let w = dwork_periods(&psi)?;
    let p = pi_triple(lambda)?;
    let r0 = (&w.w0 - &p.pi0).abs();
    let r1 = (&w.w1 - &p.pi1).abs();
    Ok((r0.max(&r1), &w.w2 / &p.pi2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id_rejected() {
        let p = Precision::new(30).unwrap();
        assert!(matches!(
            check_identity("NOPE", 10, p),
            Err(PeriodError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn qt3_small_order() {
        let r = check_identity("QT3", 12, Precision::default()).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.exact_zero, Some(true));
    }
}
