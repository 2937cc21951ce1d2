//! Frobenius bases at a maximally unipotent point `x = 0`.

use rug::{Integer, Rational};

use super::logseries::LogSeries;
use super::operator::FuchsianOperator;
use super::poly::Poly;
use crate::error::OdeError;
use crate::qseries::RationalSeries;

/// Truncated polynomial in `eps` modulo `eps^len`.
type Jet = Vec<Rational>;

fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    let n = a.len();
    let mut out = vec![Rational::new(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.cmp0().is_eq() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += Rational::from(ai * bj);
        }
    }
    out
}

fn jet_recip(a: &Jet) -> Jet {
    let n = a.len();
    let inv0 = Rational::from(a[0].recip_ref());
    let mut out = vec![Rational::new(); n];
    out[0] = inv0.clone();
    for k in 1..n {
        let mut acc = Rational::new();
        for j in 1..=k {
            acc += Rational::from(&a[j] * &out[k - j]);
        }
        out[k] = -(acc * &inv0);
    }
    out
}

/// `P(a + eps)` as a jet of length `len`.
fn shifted(p: &Poly, a: i64, len: usize) -> Jet {
    let mut out = vec![Rational::new(); len];
    for (d, c) in p.coeffs().iter().enumerate() {
        if c.cmp0().is_eq() {
            continue;
        }
        for (i, slot) in out.iter_mut().enumerate().take(d + 1) {
            let binom = Integer::from(Integer::binomial_u(d as u32, i as u32));
            let pw = Integer::from(Integer::i_pow_u(a as i32, (d - i) as u32));
            *slot += c * Rational::from(binom * pw);
        }
    }
    out
}

/// The `r` Frobenius solutions at a point of maximal unipotent monodromy.
///
/// Writing `y(eps) = x^eps sum_n c_n(eps) x^n` with `c_0 = 1`, the `k`-th
/// returned solution is the coefficient of `eps^k`, i.e.
/// `sum_{i<=k} (log x)^i / i! * sum_n [eps^(k-i)] c_n x^n`. Requires the
/// indicial polynomial to be a constant multiple of `theta^r`.
pub fn frobenius_basis(op: &FuchsianOperator, order: usize) -> Result<Vec<LogSeries>, OdeError> {
    let r = op.order();
    let pj = op.theta_expansion_at_zero();
    let p0 = &pj[0];
    let mut mum = p0.degree() == Some(r);
    if mum {
        mum = (0..r).all(|k| p0.coeff(k).cmp0().is_eq());
    }
    if !mum {
        return Err(OdeError::NotMaximallyUnipotent("0".to_string()));
    }
    let mut c: Vec<Jet> = Vec::with_capacity(order);
    let mut one = vec![Rational::new(); r];
    one[0] = Rational::from(1);
    c.push(one);
    for n in 1..order {
        let mut rhs = vec![Rational::new(); r];
        for (j, p) in pj.iter().enumerate().skip(1).take(n) {
            if p.is_zero() {
                continue;
            }
            let t = jet_mul(&shifted(p, (n - j) as i64, r), &c[n - j]);
            for (a, b) in rhs.iter_mut().zip(t) {
                *a -= b;
            }
        }
        let den = jet_recip(&shifted(p0, n as i64, r));
        c.push(jet_mul(&rhs, &den));
    }
    let parts_for = |e: usize| {
        RationalSeries::new(Rational::new(), c.iter().map(|cn| cn[e].clone()).collect())
    };
    Ok((0..r)
        .map(|k| LogSeries::new((0..=k).map(|i| parts_for(k - i)).collect()))
        .collect())
}
