//! Linear differential operators with polynomial coefficients.

use std::fmt;

use rug::Rational;

use super::logseries::LogSeries;
use super::poly::Poly;
use crate::error::OdeError;
use crate::hyperfun::PrecComplex;
use crate::qseries::RationalSeries;

const ROOT_BITS: u32 = 256;

/// `L = sum_k p_k(x) (d/dx)^k` with exact rational polynomial coefficients.
///
/// The finite singular points are the roots of the leading coefficient;
/// infinity is always treated as singular and is not listed.
#[derive(Clone, Debug)]
pub struct FuchsianOperator {
    var: String,
    coeffs: Vec<Poly>,
    singular_points: Vec<PrecComplex>,
}

impl PartialEq for FuchsianOperator {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}

/// `theta(theta-1)...(theta-k+1)` as a polynomial in `theta`.
fn falling(k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, j| &acc * &Poly::from_ints(&[-(j as i64), 1]))
}

/// Stirling numbers of the second kind `S(k, j)` for `j <= k`.
fn stirling2(k: usize) -> Vec<Rational> {
    let mut row = vec![Rational::from(1)];
    for n in 1..=k {
        let mut next = vec![Rational::new(); n + 1];
        for j in 1..=n {
            let mut v = row.get(j - 1).cloned().unwrap_or_default();
            if let Some(s) = row.get(j) {
                v += Rational::from(s * j as i64);
            }
            next[j] = v;
        }
        row = next;
    }
    row
}

fn linear(c: Rational) -> Poly {
    Poly::new(vec![c, Rational::from(1)])
}

impl FuchsianOperator {
    /// Builds `sum_k coeffs[k](x) D^k`.
    pub fn new(var: &str, coeffs: Vec<Poly>) -> Result<Self, OdeError> {
        let lead = coeffs.last().ok_or(OdeError::ZeroLeadingCoefficient)?;
        if lead.is_zero() {
            return Err(OdeError::ZeroLeadingCoefficient);
        }
        let singular_points = lead.roots(ROOT_BITS);
        Ok(FuchsianOperator {
            var: var.to_string(),
            coeffs,
            singular_points,
        })
    }

    /// Builds `sum_i a_i(x) * b_i(theta)` with `theta = x d/dx`.
    pub fn from_theta_terms(var: &str, terms: &[(Poly, Poly)]) -> Result<Self, OdeError> {
        let r = terms
            .iter()
            .filter_map(|(_, b)| b.degree())
            .max()
            .ok_or(OdeError::ZeroLeadingCoefficient)?;
        let mut coeffs = vec![Poly::zero(); r + 1];
        for (a, b) in terms {
            for (k, bk) in b.coeffs().iter().enumerate() {
                // theta^k = sum_j S(k, j) x^j D^j
                for (j, s) in stirling2(k).iter().enumerate() {
                    if s.cmp0().is_eq() {
                        continue;
                    }
                    let c = Rational::from(s * bk);
                    coeffs[j] = &coeffs[j] + &(&Poly::monomial(c, j) * a);
                }
            }
        }
        Self::new(var, coeffs)
    }

    /// `lambda(1-lambda) D^2 + (1-2 lambda) D - 1/4`, annihilating the
    /// periods of `y^2 = x(x-1)(x-lambda)`.
    pub fn legendre() -> Self {
        Self::new(
            "lambda",
            vec![
                Poly::constant(Rational::from((-1, 4))),
                Poly::from_ints(&[1, -2]),
                Poly::from_ints(&[0, 1, -1]),
            ],
        )
        .expect("nonzero leading coefficient")
    }

    /// `theta^3 - t (theta+1/4)(theta+1/2)(theta+3/4)`.
    pub fn dwork_d3() -> Self {
        let b = &(&linear(Rational::from((1, 4))) * &linear(Rational::from((1, 2))))
            * &linear(Rational::from((3, 4)));
        Self::from_theta_terms(
            "t",
            &[
                (Poly::one(), Poly::monomial(Rational::from(1), 3)),
                (Poly::from_ints(&[0, -1]), b),
            ],
        )
        .expect("nonzero leading coefficient")
    }

    /// `theta^2 - t (theta+1/8)(theta+3/8)`.
    pub fn dwork_d2() -> Self {
        let b = &linear(Rational::from((1, 8))) * &linear(Rational::from((3, 8)));
        Self::from_theta_terms(
            "t",
            &[
                (Poly::one(), Poly::monomial(Rational::from(1), 2)),
                (Poly::from_ints(&[0, -1]), b),
            ],
        )
        .expect("nonzero leading coefficient")
    }

    /// Pullback of the order-two Dwork operator along
    /// `t = lambda^2 (1-lambda) / (1-lambda/2)^4`:
    /// `lambda(1-lambda)(2-lambda)^2 D^2 + (2-lambda)(2-4 lambda+lambda^2) D - 3/4 lambda`.
    pub fn pullback_d2() -> Self {
        let l = Poly::x();
        let two_minus = Poly::from_ints(&[2, -1]);
        let p2 = &(&l * &Poly::from_ints(&[1, -1])) * &two_minus.pow(2);
        let p1 = &two_minus * &Poly::from_ints(&[2, -4, 1]);
        let p0 = Poly::monomial(Rational::from((-3, 4)), 1);
        Self::new("lambda", vec![p0, p1, p2]).expect("nonzero leading coefficient")
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Poly {
        self.coeffs.last().expect("operator has a leading coefficient")
    }

    /// Finite singular points (roots of the leading coefficient).
    pub fn singular_points(&self) -> &[PrecComplex] {
        &self.singular_points
    }

    /// Divides all coefficients by their common polynomial factor and makes
    /// the leading coefficient monic. Returns the operator and the removed
    /// factor `f`, so that `self = f * reduced`.
    pub fn reduced(&self) -> (Self, Poly) {
        let g = self
            .coeffs
            .iter()
            .fold(Poly::zero(), |acc, c| acc.gcd(c));
        let mut coeffs: Vec<Poly> = self.coeffs.iter().map(|c| c.div_rem(&g).0).collect();
        let lead = coeffs.last().and_then(|p| p.leading()).cloned().expect("nonzero");
        let inv = Rational::from(lead.recip_ref());
        for c in &mut coeffs {
            *c = c.scale(&inv);
        }
        let factor = g.scale(&lead);
        let op = Self::new(&self.var, coeffs).expect("reduced leading coefficient is nonzero");
        (op, factor)
    }

    /// If `self = (num/den) * other`, returns the reduced pair `(num, den)`.
    pub fn proportionality(&self, other: &Self) -> Option<(Poly, Poly)> {
        if self.order() != other.order() {
            return None;
        }
        let r = self.order();
        for j in 0..=r {
            for k in 0..j {
                let lhs = &self.coeffs[j] * &other.coeffs[k];
                let rhs = &self.coeffs[k] * &other.coeffs[j];
                if lhs != rhs {
                    return None;
                }
            }
        }
        let (num, den) = (&self.coeffs[r], &other.coeffs[r]);
        let g = num.gcd(den);
        let (mut n, mut d) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let dl = d.leading().cloned().expect("nonzero");
        let inv = Rational::from(dl.recip_ref());
        n = n.scale(&inv);
        d = d.scale(&inv);
        Some((n, d))
    }

    /// Operator whose solutions are the products `y_i y_j` of solutions of
    /// an order-two operator, with common polynomial factors removed.
    pub fn symmetric_square(&self) -> Result<Self, OdeError> {
        if self.order() != 2 {
            return Err(OdeError::UnsupportedOrder(self.order(), 2));
        }
        let (p0, p1, p2) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        let (d0, d1, d2) = (p0.derivative(), p1.derivative(), p2.derivative());
        let c3 = p2 * p2;
        let c2 = (p1 * p2).scale(&Rational::from(3));
        let c1 = &(&(&(p1 * p1).scale(&Rational::from(2)) + &(&d1 * p2)) - &(p1 * &d2))
            + &(p0 * p2).scale(&Rational::from(4));
        let c0 = &(p1 * p0).scale(&Rational::from(4))
            + &(&(&d0 * p2) - &(p0 * &d2)).scale(&Rational::from(2));
        let raw = Self::new(&self.var, vec![c0, c1, c2, c3])?;
        Ok(raw.reduced().0)
    }

    /// Applies the operator to an exact series. The result is known to the
    /// order the input supports.
    pub fn apply_series(&self, s: &RationalSeries) -> Result<RationalSeries, OdeError> {
        Ok(self
            .apply_log(&LogSeries::from_series(s.clone()))?
            .parts()[0]
            .clone())
    }

    /// Applies the operator to a logarithmic expansion at `x = 0`.
    pub fn apply_log(&self, f: &LogSeries) -> Result<LogSeries, OdeError> {
        let r = self.order();
        if f.order() <= r {
            return Err(OdeError::SeriesTooShort {
                needed: r + 1,
                have: f.order(),
            });
        }
        let width = f.order() + self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0) + r;
        let mut acc: Option<LogSeries> = None;
        let mut deriv = f.clone();
        for k in 0..=r {
            if k > 0 {
                deriv = deriv.derivative()?;
            }
            if self.coeffs[k].is_zero() {
                continue;
            }
            let term = deriv.mul_series(&self.coeffs[k].to_series(width));
            acc = Some(match acc {
                None => term,
                Some(a) => a.try_add(&term)?,
            });
        }
        Ok(acc.expect("leading coefficient is nonzero"))
    }

    /// Numeric residual `sum_k p_k(x) y^(k)(x)` from a jet of derivatives.
    pub fn residual_at(&self, x: &PrecComplex, jet: &[PrecComplex]) -> Result<PrecComplex, OdeError> {
        if jet.len() <= self.order() {
            return Err(OdeError::SeriesTooShort {
                needed: self.order() + 1,
                have: jet.len(),
            });
        }
        let mut acc = PrecComplex::zero(x.prec());
        for (p, y) in self.coeffs.iter().zip(jet) {
            acc += &(&p.eval_complex(x) * y);
        }
        Ok(acc)
    }

    /// Rewrites `x^m L = sum_j x^j P_j(theta)` at the origin, returning the
    /// polynomials `P_j` in `theta`. `P_0` is the indicial polynomial.
    pub fn theta_expansion_at_zero(&self) -> Vec<Poly> {
        // p_k(x) D^k = p_k(x) x^-k falling_k(theta); m clears the poles
        let m = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, p)| p.x_valuation().map(|v| k as i64 - v as i64))
            .max()
            .unwrap_or(0);
        let top = self
            .coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, p)| p.degree().map(|d| d as i64 - k as i64 + m))
            .max()
            .unwrap_or(0);
        (0..=top)
            .map(|j| {
                let mut acc = Poly::zero();
                for (k, p) in self.coeffs.iter().enumerate() {
                    let idx = j + k as i64 - m;
                    if idx < 0 {
                        continue;
                    }
                    let c = p.coeff(idx as usize);
                    if c.cmp0().is_ne() {
                        acc = &acc + &falling(k).scale(&c);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn indicial_polynomial(&self) -> Poly {
        self.theta_expansion_at_zero().swap_remove(0)
    }
}

impl fmt::Display for FuchsianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.coeffs.iter().enumerate().rev() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let d = match k {
                0 => String::new(),
                1 => format!(" D_{}", self.var),
                _ => format!(" D_{}^{k}", self.var),
            };
            write!(f, "({}){d}", p.display_in(&self.var))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_rows() {
        let s = stirling2(3);
        let v: Vec<i64> = s.iter().map(|r| r.numer().to_i64().unwrap()).collect();
        assert_eq!(v, vec![0, 1, 3, 1]);
    }

    #[test]
    fn d2_in_derivative_form() {
        let op = FuchsianOperator::dwork_d2();
        assert_eq!(op.coeffs()[2], Poly::from_ints(&[0, 0, 1, -1]));
        assert_eq!(
            op.coeffs()[1],
            Poly::new(vec![Rational::new(), Rational::from(1), Rational::from((-3, 2))])
        );
        assert_eq!(op.coeffs()[0], Poly::monomial(Rational::from((-3, 64)), 1));
    }

    #[test]
    fn indicial_polynomial_of_legendre() {
        let p = FuchsianOperator::legendre().indicial_polynomial();
        assert_eq!(p, Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn singular_points_of_pullback() {
        let s: Vec<(f64, f64)> = FuchsianOperator::pullback_d2()
            .singular_points()
            .iter()
            .map(|z| z.to_f64_pair())
            .collect();
        assert_eq!(s, vec![(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    }

    #[test]
    fn symmetric_square_of_second_derivative() {
        let op = FuchsianOperator::new("x", vec![Poly::zero(), Poly::zero(), Poly::one()]).unwrap();
        let sq = op.symmetric_square().unwrap();
        assert_eq!(sq.coeffs(), &[Poly::zero(), Poly::zero(), Poly::zero(), Poly::one()]);
    }

    #[test]
    fn symmetric_square_needs_order_two() {
        assert!(matches!(
            FuchsianOperator::dwork_d3().symmetric_square(),
            Err(OdeError::UnsupportedOrder(3, 2))
        ));
    }

    #[test]
    fn zero_series_is_annihilated() {
        let r = FuchsianOperator::dwork_d3()
            .apply_series(&RationalSeries::zero(10))
            .unwrap();
        assert!(r.is_zero());
    }
}
