//! Truncated power series with exact rational coefficients.
//!
//! A [`RationalSeries`] represents
//!
//! ```text
//! q^offset * (c_0 + c_1 q + ... + c_{N-1} q^{N-1} + O(q^N))
//! ```
//!
//! where `offset` is an arbitrary rational (so `q^(1/24)` and `q^(-1)`
//! prefactors are carried exactly) and `N` is the order. Coefficients at
//! shifts `>= N` are unknown, not zero; every operation propagates the
//! tightest truncation it can prove, so that identities can be checked by
//! asserting that all *known* coefficients of a difference vanish.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Assign, Integer, Rational};

use crate::error::SeriesError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    offset: Rational,
    coeffs: Vec<Rational>,
}

/// Binary and unary ring operations exposed through [`series_arith`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    ReciprocalOfA,
    /// `d/dq` when `theta_mode` is false, `q d/dq` when true.
    DerivativeOfA { theta_mode: bool },
    IntegerPower(i64),
}

/// Dispatching entry point for the elementary ring operations.
///
/// `b` is ignored by the unary operations.
pub fn series_arith(
    a: &RationalSeries,
    b: &RationalSeries,
    op: SeriesOp,
) -> Result<RationalSeries, SeriesError> {
    match op {
        SeriesOp::Add => a.try_add(b),
        SeriesOp::Sub => a.try_sub(b),
        SeriesOp::Mul => Ok(a.mul(b)),
        SeriesOp::ReciprocalOfA => a.reciprocal(),
        SeriesOp::DerivativeOfA { theta_mode: true } => Ok(a.theta()),
        SeriesOp::DerivativeOfA { theta_mode: false } => Ok(a.derivative()),
        SeriesOp::IntegerPower(n) => a.powi(n),
    }
}

fn is_integral(r: &Rational) -> bool {
    *r.denom() == 1
}

fn to_i64(r: &Rational) -> Option<i64> {
    if is_integral(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

impl RationalSeries {
    pub fn new(offset: Rational, coeffs: Vec<Rational>) -> Self {
        RationalSeries { offset, coeffs }
    }

    /// Series with integral offset and integer coefficients.
    pub fn from_ints(offset: i64, coeffs: &[i64]) -> Self {
        RationalSeries {
            offset: Rational::from(offset),
            coeffs: coeffs.iter().map(|&c| Rational::from(c)).collect(),
        }
    }

    pub fn from_integers(offset: Rational, coeffs: Vec<Integer>) -> Self {
        RationalSeries {
            offset,
            coeffs: coeffs.into_iter().map(Rational::from).collect(),
        }
    }

    /// The series `0 + O(q^order)`.
    pub fn zero(order: usize) -> Self {
        RationalSeries {
            offset: Rational::new(),
            coeffs: vec![Rational::new(); order],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::from(1), order)
    }

    /// The expansion variable `q + O(q^order)`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = Rational::from(1);
        }
        s
    }

    /// Builds a truncated polynomial `sum c_k q^k + O(q^order)`.
    pub fn from_polynomial(coeffs: &[Rational], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.iter().enumerate().take(order) {
            s.coeffs[k] = c.clone();
        }
        s
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient at shift `k`, i.e. of `q^(offset + k)`; `None` when unknown.
    pub fn coeff(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// Coefficient of `q^e`; `None` when `e` is beyond the truncation.
    pub fn coeff_at(&self, e: &Rational) -> Option<Rational> {
        let shift = Rational::from(e - &self.offset);
        if shift < 0 {
            return Some(Rational::new());
        }
        if !is_integral(&shift) {
            return if shift < self.order() as i64 {
                Some(Rational::new())
            } else {
                None
            };
        }
        let k = shift.numer().to_usize()?;
        self.coeffs.get(k).cloned()
    }

    /// Absolute truncation exponent: the series is known modulo `q^precision`.
    pub fn precision(&self) -> Rational {
        Rational::from(&self.offset + self.order() as i64)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.cmp0().is_eq())
    }

    /// Shift of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.cmp0().is_ne())
    }

    /// Moves leading zero coefficients into the offset. The absolute
    /// precision is unchanged.
    pub fn normalized(&self) -> Self {
        let v = self.valuation().unwrap_or(self.order());
        RationalSeries {
            offset: Rational::from(&self.offset + v as i64),
            coeffs: self.coeffs[v..].to_vec(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        RationalSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Truncates so that the absolute precision does not exceed `prec`.
    pub fn truncate_at(&self, prec: &Rational) -> Self {
        let room = Rational::from(prec - &self.offset);
        if room <= 0 {
            return RationalSeries {
                offset: self.offset.clone(),
                coeffs: Vec::new(),
            };
        }
        let n = Integer::from(room.ceil_ref()).to_usize().unwrap_or(usize::MAX);
        self.truncate(n)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalSeries {
            offset: self.offset.clone(),
            coeffs: self.coeffs.iter().map(|x| Rational::from(x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `q^by`.
    pub fn shift(&self, by: &Rational) -> Self {
        RationalSeries {
            offset: Rational::from(&self.offset + by),
            coeffs: self.coeffs.clone(),
        }
    }

    fn aligned(&self, other: &Self) -> Result<(Rational, usize, i64, i64), SeriesError> {
        let diff = Rational::from(&other.offset - &self.offset);
        if !is_integral(&diff) {
            return Err(SeriesError::IncompatibleOffsets(
                self.offset.to_string(),
                other.offset.to_string(),
            ));
        }
        let base = if self.offset <= other.offset {
            self.offset.clone()
        } else {
            other.offset.clone()
        };
        let p1 = self.precision();
        let p2 = other.precision();
        let prec = if p1 <= p2 { p1 } else { p2 };
        let order = Rational::from(&prec - &base);
        let order = order.numer().to_usize().unwrap_or(0);
        let s1 = to_i64(&Rational::from(&self.offset - &base)).unwrap_or(0);
        let s2 = to_i64(&Rational::from(&other.offset - &base)).unwrap_or(0);
        Ok((base, order, s1, s2))
    }

    fn combine(&self, other: &Self, sign: i32) -> Result<Self, SeriesError> {
        let (base, order, s1, s2) = self.aligned(other)?;
        let mut coeffs = vec![Rational::new(); order];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let k = k as i64;
            if k >= s1 {
                if let Some(c) = self.coeffs.get((k - s1) as usize) {
                    *slot += c;
                }
            }
            if k >= s2 {
                if let Some(c) = other.coeffs.get((k - s2) as usize) {
                    if sign > 0 {
                        *slot += c;
                    } else {
                        *slot -= c;
                    }
                }
            }
        }
        Ok(RationalSeries {
            offset: base,
            coeffs,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.combine(other, -1)
    }

    /// Exact product. Leading zeros of either factor are used to tighten
    /// the truncation of the result.
    pub fn mul(&self, other: &Self) -> Self {
        let (n1, n2) = (self.order(), other.order());
        let v1 = self.valuation().unwrap_or(n1);
        let v2 = other.valuation().unwrap_or(n2);
        let order = (n1 + v2).min(n2 + v1);
        let mut coeffs = vec![Rational::new(); order];
        let mut tmp = Rational::new();
        for i in v1..n1.min(order) {
            let a = &self.coeffs[i];
            if a.cmp0().is_eq() {
                continue;
            }
            let jmax = (order - i).min(n2);
            for j in v2..jmax {
                let b = &other.coeffs[j];
                if b.cmp0().is_eq() {
                    continue;
                }
                tmp.assign(a * b);
                coeffs[i + j] += &tmp;
            }
        }
        RationalSeries {
            offset: Rational::from(&self.offset + &other.offset),
            coeffs,
        }
    }

    /// Multiplicative inverse.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a = self.normalized();
        if a.order() == 0 {
            return Err(SeriesError::ZeroLeadingCoefficient);
        }
        let n = a.order();
        let inv0 = Rational::from(a.coeffs[0].recip_ref());
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        let mut tmp = Rational::new();
        for k in 1..n {
            let mut acc = Rational::new();
            for j in 1..=k {
                if a.coeffs[j].cmp0().is_eq() {
                    continue;
                }
                tmp.assign(&a.coeffs[j] * &out[k - j]);
                acc += &tmp;
            }
            acc *= &inv0;
            out.push(-acc);
        }
        Ok(RationalSeries {
            offset: -a.offset,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Result<Self, SeriesError> {
        if n == 0 {
            let order = self.normalized().order();
            return Ok(Self::one(order));
        }
        let mut base = if n < 0 {
            self.reciprocal()?
        } else {
            self.normalized()
        };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// `self^r` for rational `r`, defined when the leading coefficient is 1.
    /// The result's offset is `r * offset`.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self, SeriesError> {
        let a = self.normalized();
        if a.order() == 0 {
            return Err(SeriesError::ZeroLeadingCoefficient);
        }
        if a.coeffs[0] != 1 {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = a.order();
        // Miller's recurrence for f = g^r with g_0 = 1:
        // k f_k = sum_{j=1}^{k} (r j - (k - j)) g_j f_{k-j}
        let mut f: Vec<Rational> = Vec::with_capacity(n);
        f.push(Rational::from(1));
        let mut tmp = Rational::new();
        for k in 1..n {
            let mut acc = Rational::new();
            for j in 1..=k {
                if a.coeffs[j].cmp0().is_eq() {
                    continue;
                }
                let w = Rational::from(r * j as i64) - (k - j) as i64;
                tmp.assign(&a.coeffs[j] * &f[k - j]);
                tmp *= &w;
                acc += &tmp;
            }
            acc /= k as i64;
            f.push(acc);
        }
        Ok(RationalSeries {
            offset: Rational::from(&a.offset * r),
            coeffs: f,
        })
    }

    /// `d/dq`.
    pub fn derivative(&self) -> Self {
        let mut s = self.theta();
        s.offset -= 1;
        s
    }

    /// The Euler operator `q d/dq`, acting on exponents directly.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| Rational::from(&self.offset + k as i64) * c)
            .collect();
        RationalSeries {
            offset: self.offset.clone(),
            coeffs,
        }
    }

    /// Dense coefficients indexed by exponent `0..precision`, for series
    /// that are genuine power series (integral offset, no pole).
    fn dense_power_series(&self) -> Result<Vec<Rational>, SeriesError> {
        let off = to_i64(&self.offset)
            .ok_or_else(|| SeriesError::FractionalOffset(self.offset.to_string()))?;
        let prec = off + self.order() as i64;
        if prec <= 0 {
            return Err(SeriesError::OrderTooSmall(self.order()));
        }
        let mut out = vec![Rational::new(); prec as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = off + k as i64;
            if e < 0 {
                if c.cmp0().is_ne() {
                    return Err(SeriesError::NegativeValuation(self.offset.to_string()));
                }
                continue;
            }
            out[e as usize] = c.clone();
        }
        Ok(out)
    }

    /// Exponential of a series without constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let a = self.dense_power_series()?;
        if a[0].cmp0().is_ne() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let n = a.len();
        // n e_n = sum_{k=1}^{n} k a_k e_{n-k}
        let mut e: Vec<Rational> = Vec::with_capacity(n);
        e.push(Rational::from(1));
        let mut tmp = Rational::new();
        for m in 1..n {
            let mut acc = Rational::new();
            for k in 1..=m {
                if a[k].cmp0().is_eq() {
                    continue;
                }
                tmp.assign(&a[k] * &e[m - k]);
                tmp *= k as i64;
                acc += &tmp;
            }
            acc /= m as i64;
            e.push(acc);
        }
        Ok(RationalSeries {
            offset: Rational::new(),
            coeffs: e,
        })
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let a = self.dense_power_series()?;
        if a[0] != 1 {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let n = a.len();
        // n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
        let mut l: Vec<Rational> = vec![Rational::new(); n];
        let mut tmp = Rational::new();
        for m in 1..n {
            let mut acc = Rational::from(&a[m] * m as i64);
            for k in 1..m {
                if l[k].cmp0().is_eq() || a[m - k].cmp0().is_eq() {
                    continue;
                }
                tmp.assign(&l[k] * &a[m - k]);
                tmp *= k as i64;
                acc -= &tmp;
            }
            acc /= m as i64;
            l[m] = acc;
        }
        Ok(RationalSeries {
            offset: Rational::new(),
            coeffs: l,
        })
    }

    /// Composition `self(inner(q))`. `self` must be a power series and
    /// `inner` must vanish at `q = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let f = self.dense_power_series()?;
        let g = inner.normalized();
        let v = to_i64(&g.offset).ok_or_else(|| SeriesError::FractionalOffset(g.offset.to_string()))?;
        if g.order() == 0 {
            return Err(SeriesError::OrderTooSmall(0));
        }
        if v < 1 {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let v = v as usize;
        let pg = v + g.order();
        let pf = f.len();
        let kmin = f.iter().skip(1).position(|c| c.cmp0().is_ne()).map(|i| i + 1);
        let prec = match kmin {
            Some(k) => (v * pf).min((k - 1) * v + pg),
            None => v * pf,
        };
        let g_dense = g.dense_power_series()?;
        let mut out = vec![Rational::new(); prec];
        if prec > 0 {
            out[0] = f[0].clone();
        }
        // power = g^k, truncated at prec
        let mut power: Vec<Rational> = vec![Rational::new(); prec];
        if prec > 0 {
            power[0] = Rational::from(1);
        }
        let mut tmp = Rational::new();
        for (k, fk) in f.iter().enumerate().skip(1) {
            if k * v >= prec {
                break;
            }
            let mut next = vec![Rational::new(); prec];
            for (i, pi) in power.iter().enumerate() {
                if pi.cmp0().is_eq() {
                    continue;
                }
                for (j, gj) in g_dense.iter().enumerate().skip(v) {
                    if i + j >= prec {
                        break;
                    }
                    if gj.cmp0().is_eq() {
                        continue;
                    }
                    tmp.assign(pi * gj);
                    next[i + j] += &tmp;
                }
            }
            power = next;
            if fk.cmp0().is_ne() {
                for (o, p) in out.iter_mut().zip(&power) {
                    if p.cmp0().is_ne() {
                        tmp.assign(fk * p);
                        *o += &tmp;
                    }
                }
            }
        }
        Ok(RationalSeries {
            offset: Rational::new(),
            coeffs: out,
        })
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[q^n] b = (1/n) [x^(n-1)] (x / a(x))^n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let a = self.normalized();
        if a.order() == 0 || a.offset != 1 {
            return Err(SeriesError::ZeroLinearCoefficient);
        }
        let n = a.order();
        let u = RationalSeries {
            offset: Rational::new(),
            coeffs: a.coeffs.clone(),
        };
        let w = u.reciprocal()?;
        let mut out = Vec::with_capacity(n);
        let mut power = Self::one(n);
        for k in 1..=n {
            power = power.mul(&w);
            let c = power.coeffs[k - 1].clone() / k as i64;
            out.push(c);
        }
        Ok(RationalSeries {
            offset: Rational::from(1),
            coeffs: out,
        })
    }

    /// Substitutes `q -> q^k`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1, "inflation factor must be positive");
        let mut coeffs = vec![Rational::new(); self.order() * k];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        RationalSeries {
            offset: Rational::from(&self.offset * k as i64),
            coeffs,
        }
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.cmp0().is_eq() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = Rational::from(&self.offset + k as i64);
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*q^{e}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision())
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    /// Panics if the offsets do not lie on a common integer lattice.
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        self.try_add(rhs).expect("series offsets must differ by an integer")
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        self.try_sub(rhs).expect("series offsets must differ by an integer")
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        RationalSeries::mul(self, rhs)
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        self.scale(&Rational::from(-1))
    }
}
