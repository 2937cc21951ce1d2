use rug::{Float, Rational};

use super::complex::PrecComplex;
use crate::error::NumericError;
use crate::qseries::RationalSeries;

/// Radius of the disk on which the direct series is used.
pub const DIRECT_SERIES_RADIUS: f64 = 0.9;

fn check_lower(c: &Rational) -> Result<(), NumericError> {
    if *c.denom() == 1 && *c <= 0 {
        return Err(NumericError::NonpositiveIntegerParameter(c.to_string()));
    }
    Ok(())
}

/// Exact Taylor coefficients `(a)_n (b)_n / ((c)_n n!)` for `n < order`.
pub fn hyp2f1_coefficients(a: &Rational, b: &Rational, c: &Rational, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order);
    let mut t = Rational::from(1);
    for n in 0..order {
        out.push(t.clone());
        let n = n as i64;
        let num = Rational::from(a + n) * Rational::from(b + n);
        let den = Rational::from(c + n) * (n + 1);
        t *= num;
        t /= den;
    }
    out
}

/// `2F1(a, b; c; x) + O(x^order)` as an exact series.
pub fn hyp2f1_series(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    order: usize,
) -> Result<RationalSeries, NumericError> {
    check_lower(c)?;
    Ok(RationalSeries::new(
        Rational::new(),
        hyp2f1_coefficients(a, b, c, order),
    ))
}

/// Gauss hypergeometric function on `|z| <= 0.9` by direct summation.
///
/// Summation stops once a geometric majorant of the tail drops below
/// `2^-prec * max(1, |partial sum|)`, where `prec` is the precision of `z`.
pub fn hyp2f1(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    z: &PrecComplex,
) -> Result<PrecComplex, NumericError> {
    check_lower(c)?;
    let bits = z.prec();
    let zabs = z.abs().to_f64();
    if zabs > DIRECT_SERIES_RADIUS {
        return Err(NumericError::OutsideDisk(format!("{z:.20}")));
    }
    let mut sum = PrecComplex::zero(bits);
    let mut term = PrecComplex::one(bits);
    let af = a.to_f64().abs();
    let bf = b.to_f64().abs();
    let cf = c.to_f64();
    let eps = Float::with_val(bits, 1) >> bits;
    let mut n: i64 = 0;
    loop {
        sum += &term;
        if term.is_zero() {
            break;
        }
        let nf = n as f64;
        if nf + cf > 0.0 {
            let r1 = ((nf + af) / (nf + cf)).max(1.0);
            let r2 = ((nf + bf) / (nf + 1.0)).max(1.0);
            let rho = r1 * r2 * zabs;
            if rho < 1.0 {
                // tail after `term` is bounded by |term| * rho / (1 - rho)
                let tail = term.abs() * (rho / (1.0 - rho));
                let scale = sum.abs().max(&Float::with_val(bits, 1));
                if tail < Float::with_val(bits, &eps * &scale) {
                    break;
                }
            }
        }
        let num = Rational::from(a + n) * Rational::from(b + n);
        let den = Rational::from(c + n) * (n + 1);
        let ratio = num / den ;
        term = (&term * z).scale_rational(&ratio);
        n += 1;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn value_at_zero_is_one() {
        let z = PrecComplex::zero(200);
        let v = hyp2f1(&r(1, 3), &r(-5, 7), &r(2, 1), &z).unwrap();
        assert_eq!(v, PrecComplex::one(200));
    }

    #[test]
    fn legendre_coefficients() {
        let c = hyp2f1_coefficients(&r(1, 2), &r(1, 2), &r(1, 1), 3);
        assert_eq!(c, vec![r(1, 1), r(1, 4), r(9, 64)]);
    }

    #[test]
    fn dwork_square_root_coefficients() {
        let c = hyp2f1_coefficients(&r(1, 8), &r(3, 8), &r(1, 1), 4);
        assert_eq!(
            c,
            vec![r(1, 1), r(3, 64), r(297, 16384), r(10659, 1048576)]
        );
    }

    #[test]
    fn elementary_closed_form() {
        // 2F1(1, 1; 2; z) = -log(1 - z) / z
        let bits = 300;
        let z = PrecComplex::from_f64(bits, 0.5, 0.25);
        let v = hyp2f1(&r(1, 1), &r(1, 1), &r(2, 1), &z).unwrap();
        let one = PrecComplex::one(bits);
        let expect = -(&(&one - &z).ln() / &z);
        assert!((&v - &expect).abs() < Float::with_val(bits, 1e-85));
    }

    #[test]
    fn rejects_outside_disk_and_bad_c() {
        let z = PrecComplex::from_f64(128, 0.95, 0.0);
        assert!(matches!(
            hyp2f1(&r(1, 2), &r(1, 2), &r(1, 1), &z),
            Err(NumericError::OutsideDisk(_))
        ));
        let z = PrecComplex::from_f64(128, 0.1, 0.0);
        assert!(matches!(
            hyp2f1(&r(1, 2), &r(1, 2), &r(-2, 1), &z),
            Err(NumericError::NonpositiveIntegerParameter(_))
        ));
    }
}
