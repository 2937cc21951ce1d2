//! Eta products and theta constants as exact q-series.

use rug::{Integer, Rational};

use super::series::RationalSeries;

/// `q^(m e / 24) * prod_{n >= 1} (1 - q^(m n))^e`, known to relative order `order`.
///
/// The fractional prefactor is stored in the offset.
pub fn eta_product(m: u32, e: i64, order: usize) -> RationalSeries {
    assert!(m >= 1, "eta_product needs m >= 1");
    let offset = Rational::from((i64::from(m) * e, 24));
    if e == 0 || order == 0 {
        return RationalSeries::one(order).shift(&offset);
    }
    let m = m as usize;
    // Euler product prod (1 - x^n) up to x^order, x = q^m, as integers.
    let mut poly = vec![Integer::new(); order];
    poly[0] = Integer::from(1);
    let mut n = 1;
    while n * m < order {
        let step = n * m;
        for k in (step..order).rev() {
            let (lo, hi) = poly.split_at_mut(k);
            hi[0] -= &lo[k - step];
        }
        n += 1;
    }
    let base = RationalSeries::from_integers(Rational::new(), poly);
    base.powi(e)
        .expect("Euler product has unit constant term")
        .shift(&offset)
}

/// Which Jacobi theta constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Two,
    Three,
    Four,
}

impl ThetaKind {
    pub fn from_index(k: u32) -> Option<Self> {
        match k {
            2 => Some(ThetaKind::Two),
            3 => Some(ThetaKind::Three),
            4 => Some(ThetaKind::Four),
            _ => None,
        }
    }
}

/// Theta constant as a series in the nome `q = exp(pi i tau)`:
/// `theta_2 = 2 q^(1/4) sum_{n>=0} q^(n(n+1))`,
/// `theta_3 = sum q^(n^2)`, `theta_4 = sum (-1)^n q^(n^2)`.
pub fn theta_series(kind: ThetaKind, order: usize) -> RationalSeries {
    let mut c = vec![Integer::new(); order];
    match kind {
        ThetaKind::Two => {
            let mut n = 0usize;
            while n * (n + 1) < order {
                c[n * (n + 1)] += 2;
                n += 1;
            }
            RationalSeries::from_integers(Rational::from((1, 4)), c)
        }
        ThetaKind::Three | ThetaKind::Four => {
            if order > 0 {
                c[0] = Integer::from(1);
            }
            let mut n = 1usize;
            while n * n < order {
                let sign = if kind == ThetaKind::Four && n % 2 == 1 { -2 } else { 2 };
                c[n * n] += sign;
                n += 1;
            }
            RationalSeries::from_integers(Rational::new(), c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &RationalSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.numer().to_i64().unwrap()).collect()
    }

    /// Brute-force expansion of prod_{n<=nmax} (1 - x^n)^e by repeated
    /// multiplication of plain i64 polynomials.
    fn brute_product(nmax: usize, e: usize, len: usize) -> Vec<i64> {
        let mut p = vec![0i64; len];
        p[0] = 1;
        for n in 1..=nmax {
            for _ in 0..e {
                let mut next = p.clone();
                for k in n..len {
                    next[k] -= p[k - n];
                }
                p = next;
            }
        }
        p
    }

    #[test]
    fn eta4_6_coefficients() {
        let s = eta_product(4, 6, 20);
        assert_eq!(*s.offset(), 1);
        let brute = brute_product(5, 6, 5);
        let got = ints(&s);
        let nonzero: Vec<(usize, i64)> = got
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k + 1, c))
            .collect();
        assert_eq!(nonzero, vec![(1, 1), (5, -6), (9, 9), (13, 10), (17, -30)]);
        for (i, b) in brute.iter().enumerate() {
            assert_eq!(got[4 * i], *b);
        }
    }

    #[test]
    fn trivial_eta_is_one() {
        let s = eta_product(1, 0, 6);
        assert_eq!(ints(&s), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(*s.offset(), 0);
    }

    #[test]
    fn inverse_delta() {
        let s = eta_product(1, -24, 5);
        assert_eq!(*s.offset(), -1);
        assert_eq!(ints(&s), vec![1, 24, 324, 3200, 25650]);
    }

    #[test]
    fn theta_three_squares() {
        // theta_3^2 counts representations as sums of two squares
        let t = theta_series(ThetaKind::Three, 11);
        let t2 = t.mul(&t);
        assert_eq!(ints(&t2), vec![1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8]);
    }

    #[test]
    fn theta_two_offset() {
        let t = theta_series(ThetaKind::Two, 7);
        assert_eq!(*t.offset(), Rational::from((1, 4)));
        assert_eq!(ints(&t), vec![2, 0, 2, 0, 0, 0, 2]);
    }
}
