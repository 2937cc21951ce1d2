//! Point counts over prime fields.

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::ArithError;
use crate::qseries::eta_product;

/// Default enumeration bound for the Fermat quartic.
pub const FERMAT_BOUND: u64 = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variety {
    /// `y^2 = x(x-1)(x-lambda)`.
    EllipticLegendre,
    /// `y^2 = x^3 - x`.
    MinimalModel,
    /// `x0^4 + x1^4 + x2^4 + x3^4 = 0` in `P^3`.
    FermatQuartic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountResult {
    pub p: u64,
    pub variety: Variety,
    /// Number of projective points over `F_p`.
    pub count: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_odd_prime(p: u64) -> Result<(), ArithError> {
    if p == 2 || !is_prime(p) {
        return Err(ArithError::NotOddPrime(p));
    }
    Ok(())
}

/// Odd primes `3 <= p <= bound`, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (3..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Quadratic character mod `p` as a lookup table: `table[x]` is
/// `chi(x)` in `{-1, 0, 1}`.
pub fn quadratic_character_table(p: u64) -> Vec<i8> {
    let mut t = vec![-1i8; p as usize];
    t[0] = 0;
    for x in 1..p {
        t[(x * x % p) as usize] = 1;
    }
    t
}

/// `lambda mod p`, or `None` when `p` divides the denominator.
fn reduce_mod(lambda: &Rational, p: u64) -> Option<u64> {
    let pz = Integer::from(p);
    let den = Integer::from(lambda.denom() % &pz);
    if den == 0 {
        return None;
    }
    let inv = den.invert(&pz).ok()?;
    let num = Integer::from(lambda.numer() % &pz);
    let r = (num * inv) % &pz;
    let r = if r < 0 { r + &pz } else { r };
    r.to_u64()
}

fn legendre_residue(lambda: &Rational, p: u64) -> Result<u64, ArithError> {
    check_odd_prime(p)?;
    match reduce_mod(lambda, p) {
        Some(l) if l != 0 && l != 1 => Ok(l),
        _ => Err(ArithError::BadReduction {
            p,
            lambda: lambda.to_string(),
        }),
    }
}

fn char_sum(p: u64, f: impl Fn(u64) -> u64) -> i64 {
    let chi = quadratic_character_table(p);
    (0..p).map(|x| i64::from(chi[(f(x) % p) as usize])).sum()
}

/// Frobenius trace `a_p = -sum_x chi(x(x-1)(x-lambda))` of the Legendre
/// curve at a good odd prime.
pub fn ap_legendre(lambda: &Rational, p: u64) -> Result<i64, ArithError> {
    let l = legendre_residue(lambda, p)?;
    Ok(-char_sum(p, |x| x * ((x + p - 1) % p) % p * ((x + p - l) % p)))
}

/// Frobenius trace of `y^2 = x^3 - x`.
pub fn ap_minimal_model(p: u64) -> Result<i64, ArithError> {
    check_odd_prime(p)?;
    Ok(-char_sum(p, |x| (x * x % p * x + p - x) % p))
}

/// Projective point count of the Legendre curve by listing affine
/// solutions `(x, y)` and adding the point at infinity.
pub fn count_legendre(lambda: &Rational, p: u64) -> Result<CountResult, ArithError> {
    let l = legendre_residue(lambda, p)?;
    let mut squares = vec![0u64; p as usize];
    for y in 0..p {
        squares[(y * y % p) as usize] += 1;
    }
    let affine: u64 = (0..p)
        .map(|x| squares[(x * ((x + p - 1) % p) % p * ((x + p - l) % p) % p) as usize])
        .sum();
    Ok(CountResult {
        p,
        variety: Variety::EllipticLegendre,
        count: affine + 1,
    })
}

/// Coefficients `b_n` of `eta(4z)^6 = sum_{n>=1} b_n q^n` for `n <= bound`;
/// entry `n` of the result is `b_n` (entry 0 is unused and zero).
pub fn eta46_coefficients(bound: u64) -> Vec<i64> {
    let s = eta_product(4, 6, bound as usize);
    let mut out = vec![0i64; bound as usize + 1];
    // offset 1: index k holds q^(k+1)
    for (k, c) in s.coeffs().iter().enumerate() {
        out[k + 1] = c.numer().to_i64().expect("eta(4z)^6 coefficients fit in i64");
    }
    out
}

/// Coefficient of `q^p` in `eta(4z)^6`.
pub fn bp_eta(p: u64) -> Result<i64, ArithError> {
    check_odd_prime(p)?;
    Ok(eta46_coefficients(p)[p as usize])
}

/// Projective points of the Fermat quartic over `F_p`, by exhaustive
/// enumeration of the four standard affine charts
/// `x0 = 1`, `(x0, x1) = (0, 1)`, `(x0, x1, x2) = (0, 0, 1)`, `(0, 0, 0, 1)`.
pub fn fermat_quartic_count(p: u64, bound: u64) -> Result<CountResult, ArithError> {
    check_odd_prime(p)?;
    if p > bound {
        return Err(ArithError::BeyondBound { p, bound });
    }
    let q: Vec<u64> = (0..p).map(|x| x * x % p * x % p * x % p).collect();
    let mut count = 0u64;
    // x0 = 1
    for a in &q {
        for b in &q {
            let s = (1 + a + b) % p;
            count += q.iter().filter(|&&c| (s + c).is_multiple_of(p)).count() as u64;
        }
    }
    // x0 = 0, x1 = 1
    for a in &q {
        let s = (1 + a) % p;
        count += q.iter().filter(|&&c| (s + c).is_multiple_of(p)).count() as u64;
    }
    // x0 = x1 = 0, x2 = 1: need x3^4 = -1
    count += q.iter().filter(|&&c| (1 + c) % p == 0).count() as u64;
    // (0, 0, 0, 1) is never on the surface
    Ok(CountResult {
        p,
        variety: Variety::FermatQuartic,
        count,
    })
}

/// Quadratic character of conductor 16 with `chi(5) = 1`, `chi(15) = -1`.
pub fn chi16(n: i64) -> i8 {
    let r = n.rem_euclid(16);
    if r % 2 == 0 {
        return 0;
    }
    // (Z/16)^* = <5> x <-1>; r = (+-1) 5^k and chi(5) = 1, chi(-1) = -1
    let mut g = 1i64;
    for _ in 0..4 {
        if g == r {
            return 1;
        }
        if (16 - g) == r {
            return -1;
        }
        g = g * 5 % 16;
    }
    unreachable!("every odd residue is +-5^k mod 16")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_traces() {
        let two = Rational::from(2);
        assert_eq!(ap_legendre(&two, 5), Ok(-2));
        assert_eq!(ap_legendre(&two, 7), Ok(0));
        assert!(matches!(ap_legendre(&two, 2), Err(ArithError::NotOddPrime(2))));
        assert!(matches!(ap_legendre(&Rational::from(1), 5), Err(ArithError::BadReduction { .. })));
        assert!(matches!(ap_legendre(&Rational::from(6), 5), Err(ArithError::BadReduction { .. })));
        assert!(matches!(ap_legendre(&Rational::from((1, 3)), 3), Err(ArithError::BadReduction { .. })));
    }

    #[test]
    fn count_matches_trace() {
        let two = Rational::from(2);
        assert_eq!(count_legendre(&two, 5).unwrap().count, 8);
    }

    #[test]
    fn eta_coefficients() {
        assert_eq!(bp_eta(5), Ok(-6));
        assert_eq!(bp_eta(3), Ok(0));
        assert_eq!(bp_eta(13), Ok(10));
        assert_eq!(bp_eta(17), Ok(-30));
    }

    #[test]
    fn character_values() {
        assert_eq!(chi16(5), 1);
        assert_eq!(chi16(15), -1);
        assert_eq!(chi16(3), -1);
        assert_eq!(chi16(4), 0);
        assert_eq!(chi16(1), 1);
    }

    #[test]
    fn fermat_bound() {
        assert!(matches!(fermat_quartic_count(103, FERMAT_BOUND), Err(ArithError::BeyondBound { .. })));
        assert_eq!(fermat_quartic_count(17, FERMAT_BOUND).unwrap().count, 600);
    }

    #[test]
    fn primes() {
        assert_eq!(odd_primes_up_to(20), vec![3, 5, 7, 11, 13, 17, 19]);
    }
}
