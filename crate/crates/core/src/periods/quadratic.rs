//! The quadratic map between the Legendre parameter and the Dwork parameter.

use rug::{Float, Rational};

use crate::hyperfun::{hyp2f1_series, PrecComplex};
use crate::error::SeriesError;
use crate::qseries::RationalSeries;

/// Image of `lambda` under `t = lambda^2 (1-lambda) (1-lambda/2)^-4`,
/// `psi = lambda^(-1/2) (1-lambda)^(-1/4) (1-lambda/2)`.
#[derive(Clone, Debug)]
pub enum QuadMap {
    Point { t: PrecComplex, psi: PrecComplex },
    /// `lambda` in `{0, 1}`: `t = 0` and `psi` is infinite.
    PsiInfinite { t: PrecComplex },
    /// `lambda = 2`: `t` is infinite and `psi = 0`.
    Pole,
}

impl QuadMap {
    pub fn is_pole(&self) -> bool {
        matches!(self, QuadMap::Pole)
    }
}

/// Evaluates the quadratic map with principal branches of the roots.
pub fn quad_map(lambda: &PrecComplex) -> QuadMap {
    let bits = lambda.prec();
    let one = PrecComplex::one(bits);
    let one_minus = &one - lambda;
    let half_l = lambda.scale(&Float::with_val(bits, 0.5));
    let one_minus_half = &one - &half_l;
    if one_minus_half.is_zero() {
        return QuadMap::Pole;
    }
    let t = &(&lambda.square() * &one_minus) / &one_minus_half.powi(4);
    if lambda.is_zero() || one_minus.is_zero() {
        return QuadMap::PsiInfinite { t };
    }
    let psi = &(&lambda.pow_rational(&Rational::from((-1, 2)))
        * &one_minus.pow_rational(&Rational::from((-1, 4))))
        * &one_minus_half;
    QuadMap::Point { t, psi }
}

/// `t(lambda) = -16 (lambda-1) lambda^2 / (lambda-2)^4` as an exact series.
pub fn t_of_lambda_series(order: usize) -> Result<RationalSeries, SeriesError> {
    let poly = |c: &[i64]| {
        let c: Vec<Rational> = c.iter().map(|&x| Rational::from(x)).collect();
        RationalSeries::from_polynomial(&c, order)
    };
    let num = poly(&[0, 0, 16, -16]);
    let den = poly(&[16, -32, 24, -8, 1]);
    num.div(&den)
}

fn f(a: (i64, i64), b: (i64, i64), order: usize) -> RationalSeries {
    hyp2f1_series(&Rational::from(a), &Rational::from(b), &Rational::from(1), order)
        .expect("c = 1 is admissible")
}

/// Both sides of `2F1(1/2,1/2;1;z) = (1-z)^(-1/4) 2F1(1/4,1/4;1;z^2/(4z-4))`.
pub fn qt1_sides(order: usize) -> Result<(RationalSeries, RationalSeries), SeriesError> {
    let lhs = f((1, 2), (1, 2), order);
    let one_minus = RationalSeries::from_polynomial(&[Rational::from(1), Rational::from(-1)], order);
    // z^2 / (4z - 4) = -z^2 / (4 (1 - z))
    let inner = RationalSeries::from_polynomial(&[Rational::new(), Rational::new(), Rational::from((-1, 4))], order)
        .div(&one_minus)?;
    let rhs = one_minus
        .pow_rational(&Rational::from((-1, 4)))?
        .mul(&f((1, 4), (1, 4), order).compose(&inner)?);
    Ok((lhs, rhs))
}

/// Both sides of `2F1(1/4,1/4;1;z) = (1-z)^(-1/4) 2F1(1/8,3/8;1;-4z/(1-z)^2)`.
pub fn qt2_sides(order: usize) -> Result<(RationalSeries, RationalSeries), SeriesError> {
    let lhs = f((1, 4), (1, 4), order);
    let one_minus = RationalSeries::from_polynomial(&[Rational::from(1), Rational::from(-1)], order);
    let inner = RationalSeries::from_polynomial(&[Rational::new(), Rational::from(-4)], order)
        .div(&one_minus.powi(2)?)?;
    let rhs = one_minus
        .pow_rational(&Rational::from((-1, 4)))?
        .mul(&f((1, 8), (3, 8), order).compose(&inner)?);
    Ok((lhs, rhs))
}

/// Both sides of the composite
/// `2F1(1/2,1/2;1;z) = (1-z/2)^(-1/2) 2F1(1/8,3/8;1;-16(z-1)z^2/(z-2)^4)`.
pub fn qt3_sides(order: usize) -> Result<(RationalSeries, RationalSeries), SeriesError> {
    let lhs = f((1, 2), (1, 2), order);
    let one_minus_half = RationalSeries::from_polynomial(&[Rational::from(1), Rational::from((-1, 2))], order);
    let rhs = one_minus_half
        .pow_rational(&Rational::from((-1, 2)))?
        .mul(&f((1, 8), (3, 8), order).compose(&t_of_lambda_series(order)?)?);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_points() {
        let bits = 256;
        match quad_map(&PrecComplex::zero(bits)) {
            QuadMap::PsiInfinite { t } => assert!(t.is_zero()),
            other => panic!("{other:?}"),
        }
        assert!(quad_map(&PrecComplex::from_f64(bits, 2.0, 0.0)).is_pole());
        // lambda = 2 sqrt 2 - 2 maps to the conifold point t = 1
        let s2 = Float::with_val(bits, 2).sqrt();
        let l = PrecComplex::from_real(Float::with_val(bits, &s2 * 2u32) - 2u32);
        match quad_map(&l) {
            QuadMap::Point { t, psi } => {
                assert!((&t - &PrecComplex::one(bits)).abs() < 1e-70);
                assert!((&(&t * &psi.powi(4)) - &PrecComplex::one(bits)).abs() < 1e-70);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn t_series_leading_terms() {
        // t = lambda^2 + O(lambda^3)
        let t = t_of_lambda_series(6).unwrap();
        assert_eq!(t.coeffs()[..3], [Rational::new(), Rational::new(), Rational::from(1)]);
    }
}
