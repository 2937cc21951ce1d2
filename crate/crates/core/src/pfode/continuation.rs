//! Analytic continuation of solution frames by local Taylor expansion.

use rug::Float;
use serde::Deserialize;

use super::operator::FuchsianOperator;
use crate::error::OdeError;
use crate::hyperfun::{log10_abs, PrecComplex};

/// Fundamental system at a point: `values[s][d]` is the `d`-th derivative
/// of solution `s` at `base`.
#[derive(Clone, Debug)]
pub struct SolutionFrame {
    pub base: PrecComplex,
    pub values: Vec<Vec<PrecComplex>>,
    /// Accumulated truncation and rounding estimate (absolute, relative to
    /// the largest frame entry).
    pub error_estimate: Float,
}

impl SolutionFrame {
    pub fn new(base: PrecComplex, values: Vec<Vec<PrecComplex>>) -> Self {
        let bits = base.prec();
        SolutionFrame {
            base,
            values,
            error_estimate: Float::new(bits),
        }
    }

    pub fn prec(&self) -> u32 {
        self.base.prec()
    }

    /// Value (zeroth derivative) of solution `s`.
    pub fn value(&self, s: usize) -> &PrecComplex {
        &self.values[s][0]
    }

    /// Determinant of the matrix `values`.
    pub fn wronskian(&self) -> PrecComplex {
        determinant(&self.values)
    }

    /// New frame whose solution `i` is `sum_j m[i][j] * solution_j`.
    pub fn combine(&self, m: &[Vec<PrecComplex>]) -> Self {
        let bits = self.prec();
        let width = self.values[0].len();
        let values = m
            .iter()
            .map(|row| {
                (0..width)
                    .map(|d| {
                        let mut acc = PrecComplex::zero(bits);
                        for (c, sol) in row.iter().zip(&self.values) {
                            acc += &(c * &sol[d]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        SolutionFrame {
            base: self.base.clone(),
            values,
            error_estimate: self.error_estimate.clone(),
        }
    }
}

fn determinant(m: &[Vec<PrecComplex>]) -> PrecComplex {
    let n = m.len();
    let bits = m[0][0].prec();
    let mut a: Vec<Vec<PrecComplex>> = m.iter().map(|r| r[..n].to_vec()).collect();
    let mut det = PrecComplex::one(bits);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col].is_zero() {
            return PrecComplex::zero(bits);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].recip();
        for row in col + 1..n {
            let f = &a[row][col] * &inv;
            for k in col..n {
                let t = &f * &a[col][k];
                a[row][k] = &a[row][k] - &t;
            }
        }
    }
    det
}

/// Polygonal path with step control.
#[derive(Clone, Debug)]
pub struct ContinuationPath {
    pub waypoints: Vec<PrecComplex>,
    /// Minimum admissible distance to any finite singular point.
    pub clearance: f64,
    /// Each step covers at most this fraction of the distance to the
    /// nearest singular point.
    pub step_fraction: f64,
}

impl ContinuationPath {
    pub const DEFAULT_CLEARANCE: f64 = 0.1;
    pub const DEFAULT_STEP_FRACTION: f64 = 0.5;

    pub fn new(waypoints: Vec<PrecComplex>) -> Self {
        ContinuationPath {
            waypoints,
            clearance: Self::DEFAULT_CLEARANCE,
            step_fraction: Self::DEFAULT_STEP_FRACTION,
        }
    }

    /// Path from `(re, im)` pairs of doubles; intended for short literals
    /// with exactly representable coordinates.
    pub fn from_f64(bits: u32, pts: &[(f64, f64)]) -> Self {
        Self::new(pts.iter().map(|&(re, im)| PrecComplex::from_f64(bits, re, im)).collect())
    }

    /// Parses `[["re", "im"], ...]` with decimal-string coordinates.
    pub fn from_json(text: &str, bits: u32) -> Result<Self, OdeError> {
        #[derive(Deserialize)]
        struct Pt(String, String);
        let pts: Vec<Pt> =
            serde_json::from_str(text).map_err(|e| OdeError::InvalidPath(e.to_string()))?;
        if pts.len() < 2 {
            return Err(OdeError::InvalidPath("a path needs at least two waypoints".into()));
        }
        let waypoints = pts
            .iter()
            .map(|Pt(re, im)| PrecComplex::parse(bits, re, im))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(waypoints))
    }

    pub fn with_clearance(mut self, clearance: f64) -> Self {
        self.clearance = clearance;
        self
    }

    pub fn start(&self) -> &PrecComplex {
        &self.waypoints[0]
    }

    pub fn end(&self) -> &PrecComplex {
        self.waypoints.last().expect("nonempty path")
    }

    /// This path followed by `other`, which must start where this one ends.
    pub fn concat(&self, other: &Self) -> Self {
        let mut waypoints = self.waypoints.clone();
        waypoints.extend(other.waypoints.iter().skip(1).cloned());
        ContinuationPath {
            waypoints,
            clearance: self.clearance.min(other.clearance),
            step_fraction: self.step_fraction.min(other.step_fraction),
        }
    }

    /// Checks every segment against the clearance.
    pub fn check_clearance(&self, op: &FuchsianOperator) -> Result<(), OdeError> {
        // waypoints are usually decimal literals; do not fail on the last bit
        let slack = 1e-12;
        for seg in self.waypoints.windows(2) {
            let (a, b) = (seg[0].to_f64_pair(), seg[1].to_f64_pair());
            for s in op.singular_points() {
                let sp = s.to_f64_pair();
                let d = segment_distance(a, b, sp);
                if d < self.clearance - slack {
                    return Err(OdeError::ClearanceViolation {
                        point: format!("{}{:+}i", a.0, a.1),
                        singularity: format!("{}{:+}i", sp.0, sp.1),
                        distance: format!("{d:.6}"),
                        clearance: self.clearance.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn segment_distance(a: (f64, f64), b: (f64, f64), p: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.0 + t * dx - p.0, a.1 + t * dy - p.1);
    (cx * cx + cy * cy).sqrt()
}

fn nearest_singularity(op: &FuchsianOperator, x: &PrecComplex) -> f64 {
    let (xr, xi) = x.to_f64_pair();
    op.singular_points()
        .iter()
        .map(|s| {
            let (sr, si) = s.to_f64_pair();
            ((xr - sr).powi(2) + (xi - si).powi(2)).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Taylor data of one step: `b_n = a_n h^n` for the expansion
/// `y(x0 + u h) = sum_n b_n u^n`.
struct StepExpansion {
    /// `q[k][m] = [h^m] p_k(x0 + h) * h^(m + r - k)`.
    q: Vec<Vec<PrecComplex>>,
    r: usize,
}

impl StepExpansion {
    fn new(op: &FuchsianOperator, x0: &PrecComplex, h: &PrecComplex) -> Result<Self, OdeError> {
        let r = op.order();
        let hpow = {
            let max_deg = op.coeffs().iter().filter_map(|c| c.degree()).max().unwrap_or(0);
            let mut v = vec![PrecComplex::one(x0.prec())];
            for i in 1..=(max_deg + r) {
                v.push(&v[i - 1] * h);
            }
            v
        };
        let q: Vec<Vec<PrecComplex>> = op
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, p)| {
                p.taylor_at(x0)
                    .iter()
                    .enumerate()
                    .map(|(m, c)| c * &hpow[m + r - k])
                    .collect()
            })
            .collect();
        if q[r].first().is_none_or(|c| c.is_zero()) {
            return Err(OdeError::StepUnderflow(format!("{x0:.12} is a singular point")));
        }
        Ok(StepExpansion { q, r })
    }

    /// Scaled Taylor coefficients from the jet at `x0`, summed until the
    /// terms are negligible. Returns the coefficients and the tail estimate.
    fn coefficients(
        &self,
        jet: &[PrecComplex],
        h: &PrecComplex,
        max_terms: usize,
    ) -> Result<(Vec<PrecComplex>, Float), OdeError> {
        let r = self.r;
        let bits = h.prec();
        let mut b: Vec<PrecComplex> = Vec::with_capacity(max_terms);
        let mut hp = PrecComplex::one(bits);
        let mut fact = Float::with_val(bits, 1);
        for (d, y) in jet.iter().take(r).enumerate() {
            if d > 0 {
                hp = &hp * h;
                fact *= d as u32;
            }
            b.push((y * &hp).scale(&Float::with_val(bits, fact.recip_ref())));
        }
        let lead_inv = self.q[r][0].recip();
        let eps = Float::with_val(bits, 1) >> bits;
        let mut scale = b.iter().map(|c| c.abs()).fold(Float::new(bits), |a, c| a.max(&c));
        let mut quiet = 0usize;
        let mut last = Float::new(bits);
        for n in 0.. {
            if b.len() >= max_terms {
                return Err(OdeError::StepUnderflow(format!(
                    "Taylor series did not converge within {max_terms} terms"
                )));
            }
            let mut acc = PrecComplex::zero(bits);
            for (k, qk) in self.q.iter().enumerate() {
                for (m, c) in qk.iter().enumerate() {
                    if (k == r && m == 0) || m > n || c.is_zero() {
                        continue;
                    }
                    let i = n - m;
                    // (i+k)!/i!
                    let ff: u64 = (1..=k as u64).map(|j| i as u64 + j).product();
                    let t = &(c * &b[i + k]) * &PrecComplex::from_f64(bits, ff as f64, 0.0);
                    acc += &t;
                }
            }
            let ffn: u64 = (1..=r as u64).map(|j| n as u64 + j).product();
            let next = -(&acc * &lead_inv).scale(&Float::with_val(bits, ffn).recip());
            let mag = next.abs();
            if mag > scale {
                scale = mag.clone();
            }
            b.push(next);
            // weight by the largest derivative factor applied at evaluation
            let weighted = Float::with_val(bits, &mag * ((b.len() as u64).pow(r as u32 - 1).max(1)));
            if weighted <= Float::with_val(bits, &eps * &scale) {
                quiet += 1;
                if quiet > r + 2 {
                    last = weighted;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        Ok((b, last + eps * scale))
    }
}

/// Taylor coefficients `a_n` of a solution at an ordinary point `x0`,
/// given its derivatives there. Computes exactly `count` coefficients.
pub fn local_taylor(
    op: &FuchsianOperator,
    x0: &PrecComplex,
    jet: &[PrecComplex],
    count: usize,
) -> Result<Vec<PrecComplex>, OdeError> {
    let bits = x0.prec();
    let r = op.order();
    let one = PrecComplex::one(bits);
    let exp = StepExpansion::new(op, x0, &one)?;
    let mut a: Vec<PrecComplex> = Vec::with_capacity(count.max(r));
    let mut fact = Float::with_val(bits, 1);
    for (d, y) in jet.iter().take(r).enumerate() {
        if d > 0 {
            fact *= d as u32;
        }
        a.push(y.scale(&Float::with_val(bits, fact.recip_ref())));
    }
    let lead_inv = exp.q[r][0].recip();
    let mut n = 0;
    while a.len() < count {
        let mut acc = PrecComplex::zero(bits);
        for (k, qk) in exp.q.iter().enumerate() {
            for (m, c) in qk.iter().enumerate() {
                if (k == r && m == 0) || m > n {
                    continue;
                }
                let i = n - m;
                let ff: u64 = (1..=k as u64).map(|j| i as u64 + j).product();
                acc += &(&(c * &a[i + k]) * &PrecComplex::from_f64(bits, ff as f64, 0.0));
            }
        }
        let ffn: u64 = (1..=r as u64).map(|j| n as u64 + j).product();
        a.push(-(&acc * &lead_inv).scale(&Float::with_val(bits, ffn).recip()));
        n += 1;
    }
    a.truncate(count);
    Ok(a)
}

fn transport_step(
    op: &FuchsianOperator,
    frame: &SolutionFrame,
    target: &PrecComplex,
    max_terms: usize,
) -> Result<SolutionFrame, OdeError> {
    let bits = frame.prec();
    let r = op.order();
    let h = target - &frame.base;
    let exp = StepExpansion::new(op, &frame.base, &h)?;
    let hinv = h.recip();
    let mut values = Vec::with_capacity(frame.values.len());
    let mut err = frame.error_estimate.clone();
    for jet in &frame.values {
        let (b, tail) = exp.coefficients(jet, &h, max_terms)?;
        let mut out = Vec::with_capacity(r);
        let mut hpow = PrecComplex::one(bits);
        for d in 0..r {
            let mut acc = PrecComplex::zero(bits);
            for (n, bn) in b.iter().enumerate().skip(d) {
                let ff: u64 = (0..d as u64).map(|j| n as u64 - j).product();
                acc += &(bn * &PrecComplex::from_f64(bits, ff as f64, 0.0));
            }
            out.push(&acc * &hpow);
            hpow = &hpow * &hinv;
        }
        let scale = out.iter().map(|c| c.abs()).fold(Float::with_val(bits, 1), |a, c| a.max(&c));
        err += tail / scale;
        values.push(out);
    }
    Ok(SolutionFrame {
        base: target.clone(),
        values,
        error_estimate: err,
    })
}

/// Transports `initial` along `path`, which must start at the frame's base
/// point. Steps cover `step_fraction` of the distance to the nearest
/// singular point; the Taylor series at each step is summed until its
/// terms drop below the working precision.
pub fn continue_solution(
    op: &FuchsianOperator,
    path: &ContinuationPath,
    initial: &SolutionFrame,
) -> Result<SolutionFrame, OdeError> {
    if path.waypoints.is_empty() {
        return Err(OdeError::InvalidPath("empty path".into()));
    }
    let bits = initial.prec();
    if initial.values.len() != op.order() || initial.values.iter().any(|v| v.len() != op.order()) {
        return Err(OdeError::InvalidPath(format!(
            "frame shape does not match an operator of order {}",
            op.order()
        )));
    }
    let d0 = (&initial.base - path.start()).abs().to_f64();
    if d0 > 1e-20 {
        return Err(OdeError::InvalidPath("path does not start at the frame base point".into()));
    }
    path.check_clearance(op)?;
    if initial.wronskian().is_zero() {
        return Err(OdeError::SingularFrame);
    }
    let max_terms = 40 * bits as usize + 200;
    let min_step = path.clearance * path.step_fraction * 1e-3;
    let mut frame = initial.clone();
    for w in path.waypoints.iter().skip(1) {
        let w = w.with_prec(bits);
        loop {
            let remaining = (&w - &frame.base).abs().to_f64();
            if remaining == 0.0 {
                break;
            }
            let rho = nearest_singularity(op, &frame.base);
            let step = path.step_fraction * rho;
            if step < min_step {
                return Err(OdeError::StepUnderflow(format!("{:.12}", frame.base)));
            }
            let target = if remaining <= step {
                w.clone()
            } else {
                let dir = (&w - &frame.base).scale(&Float::with_val(bits, step / remaining));
                &frame.base + &dir
            };
            frame = transport_step(op, &frame, &target, max_terms)?;
        }
    }
    Ok(frame)
}

/// Base-10 logarithm of the frame's error estimate, for reports.
pub fn error_digits(frame: &SolutionFrame) -> f64 {
    log10_abs(&frame.error_estimate)
}
