//! Periods of the Dwork pencil near `psi = infinity`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{NumericError, PeriodError};
use crate::hyperfun::{harmonic_sums, pi, PrecComplex};
use crate::pfode::LogSeries;
use crate::qseries::RationalSeries;

/// Region of validity: the series in `t = psi^-4` converge for `|t| < 1`;
/// evaluation is restricted to `|psi|^4 > DWORK_PSI4_MIN`.
pub const DWORK_PSI4_MIN: f64 = 1.2;

#[derive(Clone, Debug, Serialize)]
pub struct DworkPeriods {
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub psi: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub t: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w0: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w1: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub w2: PrecComplex,
    #[serde(serialize_with = "crate::report::ser_complex")]
    pub tau: PrecComplex,
}

/// `(4n)! / (n!)^4`.
pub fn dwork_coefficient(n: u64) -> Integer {
    let f = |k: u64| Integer::from(Integer::factorial(k as u32));
    f(4 * n) / f(n).pow(4u32)
}

/// `W_0 = sum (4n)!/(n!)^4 (4 psi)^(-4n)` as an exact series in `t = psi^-4`,
/// i.e. with coefficients `(4n)!/(n!)^4 / 256^n`, to `O(t^order)`.
pub fn w0_series(order: usize) -> RationalSeries {
    RationalSeries::new(
        Rational::new(),
        (0..order as u64)
            .map(|n| Rational::from((dwork_coefficient(n), Integer::from(256).pow(n as u32))))
            .collect(),
    )
}

/// Exact logarithmic solutions in `t` behind `W_1` and `W_2`:
///
/// - `S_1 = W_0 log t + 4 sum c_n B_n t^n`,
/// - `S_2 = W_0 log^2 t + 8 log t sum c_n B_n t^n + 16 sum c_n C_n t^n`,
///
/// with `B_n = H_4n - H_n`, `C_n = B_n^2 - H2_4n + H2_n/4`. Then
/// `2 pi i W_1 = S_1 - log(256) W_0` and
/// `(2 pi i)^2 W_2 = S_2 - 2 log(256) S_1 + (log^2 256 + 2 pi^2) W_0`.
pub fn dwork_log_solutions(order: usize) -> [LogSeries; 3] {
    let w0 = w0_series(order);
    let mut b = Vec::with_capacity(order);
    let mut c = Vec::with_capacity(order);
    for (n, cn) in w0.coeffs().iter().enumerate() {
        let (h4, h4sq) = harmonic_sums(4 * n as u64);
        let (h1, h1sq) = harmonic_sums(n as u64);
        let bn = h4 - h1;
        let cn_bracket = Rational::from(bn.square_ref()) - h4sq + h1sq / 4;
        b.push(Rational::from(cn * &bn));
        c.push(Rational::from(cn * &cn_bracket));
    }
    let b = RationalSeries::new(Rational::new(), b);
    let c = RationalSeries::new(Rational::new(), c);
    let s1 = LogSeries::new(vec![b.scale(&Rational::from(4)), w0.clone()]);
    // log^2 t = 2 * (log^2 t / 2!)
    let s2 = LogSeries::new(vec![
        c.scale(&Rational::from(16)),
        b.scale(&Rational::from(8)),
        w0.scale(&Rational::from(2)),
    ]);
    [LogSeries::from_series(w0), s1, s2]
}

/// `W_0, W_1, W_2` and `tau = W_1/W_0` at `psi`, `|psi|^4 > 1.2`.
///
/// Uses `l = -4 log(4 psi)` with the principal logarithm:
/// `2 pi i W_1 = l W_0 + 4 sum c_n B_n t^n` and
/// `(2 pi i)^2 W_2 = l^2 W_0 + 8 l sum c_n B_n t^n + 16 sum c_n (B_n^2 - H2_4n + H2_n/4) t^n + 2 pi^2 W_0`.
pub fn dwork_periods(psi: &PrecComplex) -> Result<DworkPeriods, PeriodError> {
    let bits = psi.prec();
    if psi.is_zero() || psi.abs().to_f64().powi(4) <= DWORK_PSI4_MIN {
        return Err(NumericError::OutsideDisk(format!("psi = {psi:.20}")).into());
    }
    let t = psi.powi(-4);
    let tabs = t.abs().to_f64();
    let eps = Float::with_val(bits, 1) >> (bits + 4);
    let tail = 1.0 / (1.0 - tabs);
    // running sums of c_n t^n, c_n B_n t^n and c_n C_n t^n
    let mut s0 = PrecComplex::one(bits);
    let mut sb = PrecComplex::zero(bits);
    let mut sc = PrecComplex::zero(bits);
    let mut c = Float::with_val(bits, 1);
    let (mut h1, mut h1sq, mut h4, mut h4sq) =
        (Float::new(bits), Float::new(bits), Float::new(bits), Float::new(bits));
    let mut pow = PrecComplex::one(bits);
    let mut n: u64 = 0;
    loop {
        n += 1;
        let num: u64 = (4 * n) * (4 * n - 1) * (4 * n - 2) * (4 * n - 3);
        c *= num;
        c /= Float::with_val(bits, Float::with_val(bits, n).pow(4u32)) * 256u32;
        let inv = Float::with_val(bits, n).recip();
        h1 += &inv;
        h1sq += Float::with_val(bits, inv.square_ref());
        for k in 4 * n - 3..=4 * n {
            let inv = Float::with_val(bits, k).recip();
            h4sq += Float::with_val(bits, inv.square_ref());
            h4 += inv;
        }
        let bn = Float::with_val(bits, &h4 - &h1);
        let mut cn = Float::with_val(bits, bn.square_ref());
        cn -= &h4sq;
        cn += Float::with_val(bits, &h1sq / 4u32);
        pow = &pow * &t;
        s0 += &pow.scale(&c);
        sb += &pow.scale(&Float::with_val(bits, &c * &bn));
        sc += &pow.scale(&Float::with_val(bits, &c * &cn));
        let weight = Float::with_val(bits, 1) + bn.clone().abs() + cn.abs();
        let mag = pow.abs() * &c * weight * tail;
        if n > 2 && mag < eps {
            break;
        }
    }
    let four_psi = psi.scale(&Float::with_val(bits, 4));
    let l = four_psi.ln().scale(&Float::with_val(bits, -4));
    let two_pi_i = PrecComplex::new(Float::new(bits), Float::with_val(bits, pi(bits) * 2u32));
    let w1_num = &(&l * &s0) + &sb.scale(&Float::with_val(bits, 4));
    let w1 = &w1_num / &two_pi_i;
    let pi2 = Float::with_val(bits, pi(bits).square_ref());
    let mut w2_num = &(&l.square() * &s0) + &(&l * &sb).scale(&Float::with_val(bits, 8));
    w2_num += &sc.scale(&Float::with_val(bits, 16));
    w2_num += &s0.scale(&Float::with_val(bits, &pi2 * 2u32));
    let w2 = &w2_num / &two_pi_i.square();
    let tau = &w1 / &s0;
    Ok(DworkPeriods {
        psi: psi.clone(),
        t,
        w0: s0,
        w1,
        w2,
        tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        assert_eq!(dwork_coefficient(0), 1);
        assert_eq!(dwork_coefficient(1), 24);
        assert_eq!(dwork_coefficient(2), 2520);
    }

    #[test]
    fn rejects_small_psi() {
        assert!(dwork_periods(&PrecComplex::from_f64(128, 1.0, 0.0)).is_err());
        assert!(dwork_periods(&PrecComplex::from_f64(128, 0.0, 1.1)).is_ok());
    }
}
