//! Expansions `sum_i (log x)^i / i! * f_i(x)` at a regular singular point.

use rug::{Integer, Rational};

use crate::error::SeriesError;
use crate::hyperfun::PrecComplex;
use crate::qseries::RationalSeries;

/// A finite sum `sum_i L^i / i! * f_i` with `L = log x` and each `f_i` an
/// exact truncated series. With the divided-power normalization,
/// `d/dx (L^i/i!) = L^(i-1)/(i-1)! / x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogSeries {
    parts: Vec<RationalSeries>,
}

fn binomial(n: usize, k: usize) -> Rational {
    Rational::from(Integer::from(Integer::binomial_u(n as u32, k as u32)))
}

impl LogSeries {
    pub fn new(parts: Vec<RationalSeries>) -> Self {
        LogSeries { parts }
    }

    /// A series without logarithms.
    pub fn from_series(f: RationalSeries) -> Self {
        LogSeries { parts: vec![f] }
    }

    pub fn parts(&self) -> &[RationalSeries] {
        &self.parts
    }

    /// Highest power of `log x` present plus one.
    pub fn log_degree(&self) -> usize {
        self.parts.len()
    }

    /// Minimum number of known coefficients over the parts.
    pub fn order(&self) -> usize {
        self.parts.iter().map(|p| p.order()).min().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LogSeries {
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every part by an ordinary series.
    pub fn mul_series(&self, s: &RationalSeries) -> Self {
        LogSeries {
            parts: self.parts.iter().map(|p| p.mul(s)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.parts.len().max(other.parts.len());
        let mut parts = Vec::with_capacity(n);
        for i in 0..n {
            parts.push(match (self.parts.get(i), other.parts.get(i)) {
                (Some(a), Some(b)) => a.try_add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(LogSeries { parts })
    }

    /// Product, using `L^i/i! * L^j/j! = C(i+j, i) L^(i+j)/(i+j)!`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.parts.len() + other.parts.len() - 1;
        let mut parts: Vec<Option<RationalSeries>> = vec![None; n];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                let term = a.mul(b).scale(&binomial(i + j, i));
                let slot = &mut parts[i + j];
                *slot = Some(match slot.take() {
                    None => term,
                    Some(acc) => acc.try_add(&term)?,
                });
            }
        }
        Ok(LogSeries {
            parts: parts.into_iter().map(|p| p.expect("every slot is filled")).collect(),
        })
    }

    /// `d/dx`: `(DF)_i = f_i' + f_{i+1} / x`.
    pub fn derivative(&self) -> Result<Self, SeriesError> {
        let minus_one = Rational::from(-1);
        let mut parts = Vec::with_capacity(self.parts.len());
        for i in 0..self.parts.len() {
            let d = self.parts[i].derivative();
            parts.push(match self.parts.get(i + 1) {
                Some(next) => d.try_add(&next.shift(&minus_one))?,
                None => d,
            });
        }
        Ok(LogSeries { parts })
    }

    /// `x d/dx`: `(theta F)_i = theta f_i + f_{i+1}`.
    pub fn theta(&self) -> Result<Self, SeriesError> {
        let mut parts = Vec::with_capacity(self.parts.len());
        for i in 0..self.parts.len() {
            let d = self.parts[i].theta();
            parts.push(match self.parts.get(i + 1) {
                Some(next) => d.try_add(next)?,
                None => d,
            });
        }
        Ok(LogSeries { parts })
    }

    /// Numeric value at `x` given a determination `log_x` of `log x`.
    /// Parts must have integral offsets.
    pub fn eval(&self, x: &PrecComplex, log_x: &PrecComplex) -> PrecComplex {
        let bits = x.prec();
        let mut total = PrecComplex::zero(bits);
        let mut lpow = PrecComplex::one(bits);
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                lpow = (&lpow * log_x).scale_rational(&Rational::from((1, i as i64)));
            }
            total += &(&lpow * &eval_series(part, x));
        }
        total
    }

    /// Values of the first `count` derivatives at `x`.
    pub fn eval_jet(
        &self,
        x: &PrecComplex,
        log_x: &PrecComplex,
        count: usize,
    ) -> Result<Vec<PrecComplex>, SeriesError> {
        let mut out = Vec::with_capacity(count);
        let mut cur = self.clone();
        for k in 0..count {
            out.push(cur.eval(x, log_x));
            if k + 1 < count {
                cur = cur.derivative()?;
            }
        }
        Ok(out)
    }
}

/// Horner evaluation of an exact series with integral offset at `x`.
pub fn eval_series(s: &RationalSeries, x: &PrecComplex) -> PrecComplex {
    let bits = x.prec();
    let mut acc = PrecComplex::zero(bits);
    for c in s.coeffs().iter().rev() {
        acc = &acc * x;
        if c.cmp0().is_ne() {
            acc = &acc + &PrecComplex::from_rational(bits, c);
        }
    }
    let off = s.offset();
    assert!(*off.denom() == 1, "numeric evaluation needs an integral offset");
    let e = off.numer().to_i64().expect("offset fits in i64");
    if e != 0 {
        acc = &acc * &x.powi(e);
    }
    acc
}
