//! Complex numbers over MPFR floats.
//!
//! All transcendental functions use the principal branch: `arg` lies in
//! `(-pi, pi]`, `sqrt` has nonnegative real part.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::{Float, Rational};

use super::precision::{parse_float, to_decimal};
use crate::error::NumericError;

/// Complex scalar at working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecComplex {
    pub re: Float,
    pub im: Float,
}

impl PrecComplex {
    pub fn new(re: Float, im: Float) -> Self {
        PrecComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        PrecComplex::new(Float::new(bits), Float::new(bits))
    }

    pub fn one(bits: u32) -> Self {
        Self::from_f64(bits, 1.0, 0.0)
    }

    pub fn i(bits: u32) -> Self {
        Self::from_f64(bits, 0.0, 1.0)
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        PrecComplex::new(Float::with_val(bits, re), Float::with_val(bits, im))
    }

    pub fn from_real(x: Float) -> Self {
        let bits = x.prec();
        PrecComplex::new(x, Float::new(bits))
    }

    pub fn from_rational(bits: u32, r: &Rational) -> Self {
        Self::from_real(Float::with_val(bits, r))
    }

    /// Parses a pair of decimal strings.
    pub fn parse(bits: u32, re: &str, im: &str) -> Result<Self, NumericError> {
        Ok(PrecComplex::new(parse_float(bits, re)?, parse_float(bits, im)?))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy rounded to `bits`.
    pub fn with_prec(&self, bits: u32) -> Self {
        PrecComplex::new(Float::with_val(bits, &self.re), Float::with_val(bits, &self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        PrecComplex::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        a + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, s: &Float) -> Self {
        let p = self.prec();
        PrecComplex::new(Float::with_val(p, &self.re * s), Float::with_val(p, &self.im * s))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let p = self.prec();
        PrecComplex::new(Float::with_val(p, &self.re * r), Float::with_val(p, &self.im * r))
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        PrecComplex::new(Float::with_val(self.im.prec(), -&self.im), self.re.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = self.norm_sqr();
        PrecComplex::new(
            Float::with_val(p, &self.re / &d),
            Float::with_val(p, -Float::with_val(p, &self.im / &d)),
        )
    }

    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut acc = PrecComplex::one(p);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        PrecComplex::new(Float::with_val(p, &r * &c), Float::with_val(p, &r * &s))
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let m = self.abs();
        PrecComplex::new(Float::with_val(p, m.ln_ref()), self.arg())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return PrecComplex::zero(p);
        }
        let m = self.abs();
        let re = Float::with_val(p, Float::with_val(p, &m + &self.re) / 2u32).sqrt();
        let mut im = Float::with_val(p, Float::with_val(p, &m - &self.re) / 2u32).sqrt();
        if self.im.is_sign_negative() && !self.im.is_zero() {
            im = -im;
        }
        PrecComplex::new(re, im)
    }

    /// Principal power `exp(r log z)`.
    pub fn pow_rational(&self, r: &Rational) -> Self {
        if self.is_zero() {
            return PrecComplex::zero(self.prec());
        }
        self.ln().scale_rational(r).exp()
    }

    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (to_decimal(&self.re, digits), to_decimal(&self.im, digits))
    }

    /// `(re, im)` as f64, for diagnostics only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for PrecComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        let (re, im) = self.to_decimal_pair(digits);
        write!(f, "({re}) + ({im})i")
    }
}

impl Add for &PrecComplex {
    type Output = PrecComplex;
    fn add(self, rhs: &PrecComplex) -> PrecComplex {
        let p = self.prec().max(rhs.prec());
        PrecComplex::new(
            Float::with_val(p, &self.re + &rhs.re),
            Float::with_val(p, &self.im + &rhs.im),
        )
    }
}

impl Sub for &PrecComplex {
    type Output = PrecComplex;
    fn sub(self, rhs: &PrecComplex) -> PrecComplex {
        let p = self.prec().max(rhs.prec());
        PrecComplex::new(
            Float::with_val(p, &self.re - &rhs.re),
            Float::with_val(p, &self.im - &rhs.im),
        )
    }
}

impl Mul for &PrecComplex {
    type Output = PrecComplex;
    fn mul(self, rhs: &PrecComplex) -> PrecComplex {
        let p = self.prec().max(rhs.prec());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        PrecComplex::new(ac - bd, ad + bc)
    }
}

impl Div for &PrecComplex {
    type Output = PrecComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &PrecComplex) -> PrecComplex {
        self * &rhs.recip()
    }
}

impl Neg for &PrecComplex {
    type Output = PrecComplex;
    fn neg(self) -> PrecComplex {
        PrecComplex::new(
            Float::with_val(self.re.prec(), -&self.re),
            Float::with_val(self.im.prec(), -&self.im),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PrecComplex {
            type Output = PrecComplex;
            fn $m(self, rhs: PrecComplex) -> PrecComplex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PrecComplex> for PrecComplex {
            type Output = PrecComplex;
            fn $m(self, rhs: &PrecComplex) -> PrecComplex {
                (&self).$m(rhs)
            }
        }
        impl $tr<PrecComplex> for &PrecComplex {
            type Output = PrecComplex;
            fn $m(self, rhs: PrecComplex) -> PrecComplex {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for PrecComplex {
    type Output = PrecComplex;
    fn neg(self) -> PrecComplex {
        -&self
    }
}

impl AddAssign<&PrecComplex> for PrecComplex {
    fn add_assign(&mut self, rhs: &PrecComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&PrecComplex> for PrecComplex {
    fn sub_assign(&mut self, rhs: &PrecComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&PrecComplex> for PrecComplex {
    fn mul_assign(&mut self, rhs: &PrecComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfun::precision::pi;

    const B: u32 = 256;

    fn close(a: &PrecComplex, b: &PrecComplex, tol: f64) -> bool {
        (a - b).abs().to_f64() < tol
    }

    #[test]
    fn exp_of_i_pi() {
        let z = PrecComplex::new(Float::new(B), pi(B));
        let e = z.exp();
        assert!(close(&e, &PrecComplex::from_f64(B, -1.0, 0.0), 1e-70));
    }

    #[test]
    fn principal_sqrt_and_log() {
        let m1 = PrecComplex::from_f64(B, -1.0, 0.0);
        assert!(close(&m1.sqrt(), &PrecComplex::i(B), 1e-70));
        let z = PrecComplex::from_f64(B, -3.0, -4.0);
        let s = z.sqrt();
        assert!(s.re > 0);
        assert!(close(&s.square(), &z, 1e-70));
        assert!(close(&z.ln().exp(), &z, 1e-70));
        // arg on the negative real axis is +pi
        assert!((m1.arg() - pi(B)).abs() < 1e-70);
    }

    #[test]
    fn division_round_trip() {
        let a = PrecComplex::from_f64(B, 0.3, -1.7);
        let b = PrecComplex::from_f64(B, -2.25, 0.5);
        let c = &(&a / &b) * &b;
        assert!(close(&c, &a, 1e-70));
    }

    #[test]
    fn rational_power() {
        let z = PrecComplex::from_f64(B, 16.0, 0.0);
        let r = z.pow_rational(&Rational::from((1, 4)));
        assert!(close(&r, &PrecComplex::from_f64(B, 2.0, 0.0), 1e-70));
        assert!(close(&z.powi(-2), &PrecComplex::from_f64(B, 1.0 / 256.0, 0.0), 1e-70));
    }
}
