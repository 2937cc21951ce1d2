//! Periods of the pulled-back K3 family and the BPS generating function.

use rug::{Float, Rational};
use serde::Serialize;

use super::legendre::{legendre_periods, varpi0_series};
use crate::error::{PeriodError, SeriesError};
use crate::hyperfun::PrecComplex;
use crate::qseries::{eta_product, RationalSeries};

/// `Pi_0 = (1-lambda/2) varpi_0^2`, `Pi_1 = (1-lambda/2) varpi_0 varpi_1`,
/// `Pi_2 = (1-lambda/2) varpi_1^2`.
#[derive(Clone, Debug, Serialize)]
pub struct PiTriple {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub lambda: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub pi0: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub pi1: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub pi2: PrecComplex,
}

pub fn pi_triple(lambda: &PrecComplex) -> Result<PiTriple, PeriodError> {
    let bits = lambda.prec();
    if lambda.is_zero() {
        // varpi_1 has a logarithmic singularity; only Pi_0(0) = 1 is finite
        return Err(crate::error::NumericError::OutsideDisk("0 (logarithmic singularity)".into()).into());
    }
    let p = legendre_periods(lambda)?;
    let factor = &PrecComplex::one(bits) - &lambda.scale(&Float::with_val(bits, 0.5));
    Ok(PiTriple {
        lambda: lambda.clone(),
        pi0: &factor * &p.varpi0.square(),
        pi1: &factor * &(&p.varpi0 * &p.varpi1),
        pi2: &factor * &p.varpi1.square(),
    })
}

/// `Pi_0 = (1-lambda/2) varpi_0^2` as an exact series in `lambda`.
pub fn pi0_series(order: usize) -> RationalSeries {
    let v = varpi0_series(order);
    let f = RationalSeries::from_polynomial(&[Rational::from(1), Rational::from((-1, 2))], order);
    f.mul(&v.mul(&v))
}

/// `1/eta^24 = q^-1 (1 + 24 q + 324 q^2 + ...)` in the bold nome
/// `exp(2 pi i tau)`, `order` known coefficients.
pub fn bps_series(order: usize) -> Result<RationalSeries, SeriesError> {
    Ok(eta_product(1, -24, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bps_leading() {
        let b = bps_series(5).unwrap();
        assert_eq!(b.offset(), &Rational::from(-1));
        let want: Vec<Rational> = [1, 24, 324, 3200, 25650].iter().map(|&c| Rational::from(c)).collect();
        assert_eq!(b.coeffs(), want.as_slice());
    }

    #[test]
    fn pi0_starts_at_one() {
        assert_eq!(pi0_series(3).coeffs()[0], 1);
        assert_eq!(pi0_series(3).coeffs()[1], 0);
    }

    #[test]
    fn product_structure() {
        let t = pi_triple(&PrecComplex::from_f64(300, 0.3, 0.1)).unwrap();
        let r = (&(&t.pi0 * &t.pi2) - &t.pi1.square()).abs();
        assert!(r < 1e-80);
    }
}
