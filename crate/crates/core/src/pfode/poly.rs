//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Integer, Rational};

use crate::hyperfun::PrecComplex;
use crate::qseries::RationalSeries;

/// Polynomial `c_0 + c_1 x + ... + c_d x^d`, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0().is_eq()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::new(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Largest `k` with `x^k` dividing `self`; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.cmp0().is_ne())
    }

    /// Exact division by `x^k`; panics if `x^k` does not divide.
    pub fn div_x_pow(&self, k: usize) -> Self {
        assert!(
            self.coeffs.iter().take(k).all(|c| c.cmp0().is_eq()),
            "x^{k} does not divide {self}"
        );
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Rational::from(c * k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_complex(&self, x: &PrecComplex) -> PrecComplex {
        let bits = x.prec();
        let mut acc = PrecComplex::zero(bits);
        for c in self.coeffs.iter().rev() {
            acc = &acc * x;
            acc.re += Float::with_val(bits, c);
        }
        acc
    }

    /// Taylor coefficients of `self(x0 + h)` in `h`.
    pub fn taylor_at(&self, x0: &PrecComplex) -> Vec<PrecComplex> {
        let bits = x0.prec();
        let mut work: Vec<PrecComplex> = self
            .coeffs
            .iter()
            .map(|c| PrecComplex::from_rational(bits, c))
            .collect();
        // repeated synthetic division by (x - x0)
        let n = work.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &work[j + 1] * x0;
                work[j] += &t;
            }
        }
        work
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::new(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = Rational::from(&r[r.len() - 1] / &lead);
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= Rational::from(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.cmp0().is_eq()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&Rational::from(l.recip_ref())),
        }
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Exact power series of the polynomial truncated at `order`.
    pub fn to_series(&self, order: usize) -> RationalSeries {
        RationalSeries::from_polynomial(&self.coeffs, order)
    }

    /// Distinct complex roots at `bits` of precision (Durand–Kerner on the
    /// squarefree part, then Newton polishing).
    pub fn roots(&self, bits: u32) -> Vec<PrecComplex> {
        let mut sf = self.squarefree();
        // rational roots are split off exactly, the rest found numerically
        let mut exact = Vec::new();
        for r in sf.rational_roots() {
            let lin = Poly::new(vec![Rational::from(-&r), Rational::from(1)]);
            sf = sf.div_rem(&lin).0;
            exact.push(PrecComplex::from_rational(bits, &r));
        }
        let mut roots = sf.numeric_roots(bits);
        roots.extend(exact);
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
        });
        roots
    }

    /// Distinct rational roots, found by the rational root test when the
    /// integral normalisation has small enough end coefficients.
    fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut p = self.clone();
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let v = p.x_valuation().unwrap_or(0);
        if v > 0 {
            out.push(Rational::new());
            p = p.div_x_pow(v);
        }
        if p.degree().unwrap_or(0) == 0 {
            return out;
        }
        let lcm = p
            .coeffs
            .iter()
            .fold(Integer::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<Integer> = p
            .coeffs
            .iter()
            .map(|c| Rational::from(c * &lcm).into_numer_denom().0)
            .collect();
        let (a0, an) = (ints[0].clone().abs(), ints.last().unwrap().clone().abs());
        let limit = Integer::from(1u64 << 40);
        if a0 > limit || an > limit {
            return out;
        }
        let divisors = |n: &Integer| {
            let n = n.to_u64().unwrap();
            let mut v = Vec::new();
            let mut k = 1u64;
            while k * k <= n {
                if n.is_multiple_of(k) {
                    v.push(k);
                    v.push(n / k);
                }
                k += 1;
            }
            v.sort_unstable();
            v.dedup();
            v
        };
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1i64, -1] {
                    let r = Rational::from((Integer::from(num) * sign, Integer::from(den)));
                    if !out.contains(&r) && p.eval(&r).cmp0().is_eq() {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    fn numeric_roots(&self, bits: u32) -> Vec<PrecComplex> {
        let sf = self;
        let d = match sf.degree() {
            None | Some(0) => return Vec::new(),
            Some(d) => d,
        };
        let work = bits + 32;
        let coeffs: Vec<PrecComplex> = sf
            .coeffs
            .iter()
            .map(|c| PrecComplex::from_rational(work, c))
            .collect();
        let eval = |x: &PrecComplex| {
            let mut acc = PrecComplex::zero(work);
            for c in coeffs.iter().rev() {
                acc = &(&acc * x) + c;
            }
            acc
        };
        let seed = PrecComplex::from_f64(work, 0.4, 0.9);
        let mut z: Vec<PrecComplex> = (0..d).map(|k| seed.powi(k as i64)).collect();
        let tol = Float::with_val(work, 1) >> (bits + 8);
        for _ in 0..(50 + 4 * bits as usize) {
            let mut moved = Float::new(work);
            for i in 0..d {
                let mut den = PrecComplex::one(work);
                for (j, zj) in z.iter().enumerate() {
                    if i != j {
                        den = &den * &(&z[i] - zj);
                    }
                }
                let delta = &eval(&z[i]) / &den;
                let m = delta.abs();
                if m > moved {
                    moved = m;
                }
                z[i] = &z[i] - &delta;
            }
            if moved < tol {
                break;
            }
        }
        let mut roots: Vec<PrecComplex> = z.into_iter().map(|r| r.with_prec(bits)).collect();
        // real roots of rational polynomials come out with a rounding-level
        // imaginary part; clear it
        for r in &mut roots {
            if r.im.clone().abs() < tol {
                r.im = Float::new(bits);
            }
        }
        roots
    }

    /// Renders the polynomial in the variable `var`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.cmp0().is_eq() {
                continue;
            }
            let neg = c.cmp0().is_lt();
            let abs = Rational::from(c.abs_ref());
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 || abs != 1 {
                out.push_str(&abs.to_string());
                if k > 0 {
                    out.push('*');
                }
            }
            out.push_str(&mono);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += Rational::from(a * b);
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rational::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-2, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_part() {
        let a = &p(&[0, 1]).pow(3) * &p(&[2, -1]).pow(2);
        assert_eq!(a.squarefree(), &p(&[0, 1]) * &p(&[-2, 1]));
    }

    #[test]
    fn roots_of_lambda_one_minus_lambda_two_minus_lambda_squared() {
        let a = &(&p(&[0, 1]) * &p(&[1, -1])) * &p(&[2, -1]).pow(2);
        let r = a.roots(128);
        let got: Vec<(f64, f64)> = r.iter().map(|z| z.to_f64_pair()).collect();
        assert_eq!(got.len(), 3);
        for (z, want) in got.iter().zip([0.0, 1.0, 2.0]) {
            assert!((z.0 - want).abs() < 1e-30 && z.1 == 0.0, "{got:?}");
        }
    }

    #[test]
    fn taylor_shift() {
        // x^2 at 3 + h = 9 + 6h + h^2
        let t = p(&[0, 0, 1]).taylor_at(&PrecComplex::from_f64(64, 3.0, 0.0));
        let v: Vec<f64> = t.iter().map(|z| z.to_f64_pair().0).collect();
        assert_eq!(v, vec![9.0, 6.0, 1.0]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, -4, 1]).display_in("l"), "2 - 4*l + l^2");
    }
}
