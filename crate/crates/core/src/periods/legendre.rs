//! Periods of the Legendre family `y^2 = x(x-1)(x-lambda)` near `lambda = 0`.

use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{NumericError, PeriodError};
use crate::hyperfun::{pi, PrecComplex, DIRECT_SERIES_RADIUS};
use crate::pfode::{frobenius_basis, FuchsianOperator, SolutionFrame};
use crate::qseries::RationalSeries;

/// `varpi_0`, `varpi_1` and `tau = varpi_1 / varpi_0` at `lambda`.
#[derive(Clone, Debug, Serialize)]
pub struct LegendrePeriods {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub lambda: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub varpi0: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub varpi1: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub tau: PrecComplex,
}

/// Exact `varpi_0 = 2F1(1/2,1/2;1;lambda)` to `O(lambda^order)`.
pub fn varpi0_series(order: usize) -> RationalSeries {
    let half = Rational::from((1, 2));
    crate::hyperfun::hyp2f1_series(&half, &half, &Rational::from(1), order)
        .expect("c = 1 is admissible")
}

/// The holomorphic part `h` of the logarithmic Legendre period,
/// `h = lambda/2 + 21 lambda^2/64 + ...`, to `O(lambda^(order+1))`.
///
/// Obtained as the log-companion Frobenius solution
/// `varpi_0 log lambda + h` of the Legendre operator.
pub fn h_series(order: usize) -> RationalSeries {
    let basis = frobenius_basis(&FuchsianOperator::legendre(), order + 1)
        .expect("lambda = 0 is a point of maximal unipotent monodromy");
    basis[1].parts()[0].clone()
}

/// Values and first derivatives of `varpi_0`, `h` at `lambda`.
struct Sums {
    f: PrecComplex,
    df: PrecComplex,
    h: PrecComplex,
    dh: PrecComplex,
}

/// Sums the hypergeometric series and its log companion with the float
/// recurrences `a_n = a_{n-1} (n-1/2)^2 / n^2` and
/// `n^2 h_n = (n-1/2)^2 h_{n-1} - 2n a_n + (2n-1) a_{n-1}`.
fn sums(lambda: &PrecComplex) -> Sums {
    let bits = lambda.prec();
    let eps = Float::with_val(bits, 1) >> (bits + 4);
    let r = lambda.abs().to_f64();
    let tail = 1.0 / (1.0 - r);
    let mut a = Float::with_val(bits, 1);
    let mut h = Float::new(bits);
    let mut pow = PrecComplex::one(bits); // lambda^n
    let mut s = Sums {
        f: PrecComplex::one(bits),
        df: PrecComplex::zero(bits),
        h: PrecComplex::zero(bits),
        dh: PrecComplex::zero(bits),
    };
    let mut n: u64 = 0;
    loop {
        n += 1;
        let pow_prev = pow.clone(); // lambda^(n-1)
        pow = &pow * lambda;
        let nm = Float::with_val(bits, n as f64 - 0.5);
        let nm2 = Float::with_val(bits, nm.square_ref());
        let n2 = Float::with_val(bits, n * n);
        let a_new = Float::with_val(bits, &a * &nm2) / &n2;
        let mut h_new = Float::with_val(bits, &h * &nm2);
        h_new -= Float::with_val(bits, &a_new * (2 * n));
        h_new += Float::with_val(bits, &a * (2 * n - 1));
        h_new /= &n2;
        a = a_new;
        h = h_new;
        s.f += &pow.scale(&a);
        s.h += &pow.scale(&h);
        let na = Float::with_val(bits, &a * n);
        let nh = Float::with_val(bits, &h * n);
        s.df += &pow_prev.scale(&na);
        s.dh += &pow_prev.scale(&nh);
        let mag = pow.abs() * Float::with_val(bits, h.abs_ref()).max(&a) * (n as f64 + 1.0) * tail;
        if n > 2 && mag < eps {
            break;
        }
    }
    s
}

fn check_disk(lambda: &PrecComplex) -> Result<(), PeriodError> {
    if lambda.is_zero() {
        return Err(NumericError::OutsideDisk("0 (logarithmic singularity)".into()).into());
    }
    if lambda.abs().to_f64() > DIRECT_SERIES_RADIUS {
        return Err(NumericError::OutsideDisk(format!("{lambda:.20}")).into());
    }
    Ok(())
}

/// `(varpi_0, varpi_1, varpi_0', varpi_1')` at `lambda`, principal `log`.
fn periods_with_derivatives(lambda: &PrecComplex) -> [PrecComplex; 4] {
    let bits = lambda.prec();
    let s = sums(lambda);
    let pi_i_inv = PrecComplex::new(Float::new(bits), pi(bits)).recip();
    let log16 = Float::with_val(bits, 16).ln();
    let mut log_l = lambda.ln();
    log_l.re -= &log16;
    // varpi_1 = (varpi_0 (log lambda - log 16) + h) / (pi i)
    let v1 = &(&(&s.f * &log_l) + &s.h) * &pi_i_inv;
    let dv1 = &(&(&(&s.df * &log_l) + &(&s.f / lambda)) + &s.dh) * &pi_i_inv;
    [s.f, v1, s.df, dv1]
}

/// Legendre periods by direct summation for `0 < |lambda| <= 0.9`.
///
/// `varpi_1 = (varpi_0 log lambda + h(lambda))/(pi i) - (log 16/(pi i)) varpi_0`
/// with the principal logarithm; accuracy follows the precision of `lambda`.
pub fn legendre_periods(lambda: &PrecComplex) -> Result<LegendrePeriods, PeriodError> {
    check_disk(lambda)?;
    let [v0, v1, _, _] = periods_with_derivatives(lambda);
    let tau = &v1 / &v0;
    Ok(LegendrePeriods {
        lambda: lambda.clone(),
        varpi0: v0,
        varpi1: v1,
        tau,
    })
}

/// Frame `(varpi_0, varpi_1)` with first derivatives at `lambda`, the
/// starting point for continuation with the Legendre operator.
pub fn legendre_frame(lambda: &PrecComplex) -> Result<SolutionFrame, PeriodError> {
    check_disk(lambda)?;
    let [v0, v1, d0, d1] = periods_with_derivatives(lambda);
    Ok(SolutionFrame::new(lambda.clone(), vec![vec![v0, d0], vec![v1, d1]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfun::bits_for_digits;

    #[test]
    fn h_coefficients() {
        let h = h_series(3);
        assert_eq!(h.coeffs()[0], 0);
        assert_eq!(h.coeffs()[1], Rational::from((1, 2)));
        assert_eq!(h.coeffs()[2], Rational::from((21, 64)));
        assert_eq!(h.coeffs()[3], Rational::from((185, 768)));
        assert_eq!(h_series(1).order(), 2);
    }

    #[test]
    fn float_recurrence_matches_exact_series() {
        let bits = bits_for_digits(60);
        let lambda = PrecComplex::from_f64(bits, 0.25, -0.125);
        let s = sums(&lambda);
        let h = h_series(300);
        let exact = crate::pfode::eval_series(&h, &lambda);
        assert!((&s.h - &exact).abs() < Float::with_val(bits, 1e-58));
    }

    #[test]
    fn rejects_outside_disk() {
        assert!(legendre_periods(&PrecComplex::from_f64(128, 0.95, 0.0)).is_err());
        assert!(legendre_periods(&PrecComplex::zero(128)).is_err());
    }

    #[test]
    fn tau_in_upper_half_plane() {
        let p = legendre_periods(&PrecComplex::from_f64(200, 0.3, 0.0)).unwrap();
        assert!(p.tau.im > 0);
        assert!(p.tau.re.clone().abs() < 1e-50);
    }
}
