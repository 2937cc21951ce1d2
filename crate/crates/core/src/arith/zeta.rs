//! Zeta factors at good primes.

use rayon::prelude::*;
use rug::{Float, Rational};
use serde::Serialize;

use super::count::{ap_legendre, bp_eta, eta46_coefficients, fermat_quartic_count, odd_primes_up_to};
use crate::error::ArithError;

/// Working precision of the root-modulus audit.
const AUDIT_BITS: u32 = 128;

/// `1 + c1 T + c2 T^2` stored as `[1, c1, c2]`.
pub type Quadratic = [i64; 3];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaRecord {
    pub p: u64,
    pub lambda: String,
    pub a_p: i64,
    pub b_p: i64,
    /// `1 - a_p T + p T^2`.
    pub elliptic_factor: Quadratic,
    /// Symmetric square `(1 - pT)(1 - (a_p^2 - 2p) T + p^2 T^2)`: the
    /// linear part `[1, -p]` and the quadratic part.
    pub sym2_linear: [i64; 2],
    pub sym2_quadratic: Quadratic,
    /// `1 - b_p T + p^2 T^2`.
    pub k3_factor: Quadratic,
    /// `|a_p| <= 2 sqrt(p)`.
    pub weil_ok: bool,
    /// Both reciprocal roots of `k3_factor` have modulus `p`.
    pub k3_roots_ok: bool,
    /// `b_p == a_p^2 - 2p`; evaluated only for `lambda = 2`.
    pub sym2_match: Option<bool>,
    /// Projective Fermat-quartic count, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fermat_count: Option<u64>,
    /// `1 + 20p + b_p + p^2`, listed for `p = 1 mod 8`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fermat_prediction: Option<u64>,
}

/// Moduli of the reciprocal roots of `1 + c1 T + c2 T^2`.
pub fn reciprocal_root_moduli(c1: i64, c2: i64, bits: u32) -> [Float; 2] {
    // reciprocal roots solve z^2 + c1 z + c2 = 0
    let disc = Float::with_val(bits, c1 * c1) - Float::with_val(bits, 4 * c2);
    let half = Float::with_val(bits, -c1) / 2u32;
    if disc < 0 {
        let im = Float::with_val(bits, (-disc).sqrt()) / 2u32;
        let m = Float::with_val(bits, half.hypot_ref(&im));
        [m.clone(), m]
    } else {
        let s = Float::with_val(bits, disc.sqrt()) / 2u32;
        [
            Float::with_val(bits, &half + &s).abs(),
            Float::with_val(bits, &half - &s).abs(),
        ]
    }
}

fn moduli_equal(roots: &[Float; 2], target: &Float) -> bool {
    let tol = Float::with_val(AUDIT_BITS, 1e-20);
    roots
        .iter()
        .all(|r| Float::with_val(AUDIT_BITS, r - target).abs() <= tol)
}

fn assemble(lambda: &Rational, p: u64, a_p: i64, b_p: i64) -> ZetaRecord {
    let pi = p as i64;
    let weil_ok = (a_p as i128).pow(2) <= 4 * p as i128;
    let k3 = reciprocal_root_moduli(-b_p, pi * pi, AUDIT_BITS);
    let k3_roots_ok = moduli_equal(&k3, &Float::with_val(AUDIT_BITS, p));
    let sym2_match = (*lambda == 2).then_some(b_p == a_p * a_p - 2 * pi);
    ZetaRecord {
        p,
        lambda: lambda.to_string(),
        a_p,
        b_p,
        elliptic_factor: [1, -a_p, pi],
        sym2_linear: [1, -pi],
        sym2_quadratic: [1, -(a_p * a_p - 2 * pi), pi * pi],
        k3_factor: [1, -b_p, pi * pi],
        weil_ok,
        k3_roots_ok,
        sym2_match,
        fermat_count: None,
        fermat_prediction: None,
    }
}

/// All zeta factors for the Legendre fiber at `lambda` and the weight-3
/// newform at a good odd prime `p`.
pub fn zeta_record(lambda: &Rational, p: u64) -> Result<ZetaRecord, ArithError> {
    let a_p = ap_legendre(lambda, p)?;
    Ok(assemble(lambda, p, a_p, bp_eta(p)?))
}

/// Moduli of the reciprocal roots of the elliptic factor; both equal
/// `sqrt(p)` at good primes.
pub fn elliptic_root_moduli(rec: &ZetaRecord) -> [Float; 2] {
    reciprocal_root_moduli(rec.elliptic_factor[1], rec.elliptic_factor[2], AUDIT_BITS)
}

/// Result of a table sweep: records at good primes and the skipped bad ones.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaTable {
    pub lambda: String,
    pub records: Vec<ZetaRecord>,
    pub bad_primes: Vec<u64>,
}

/// Zeta records for all odd primes up to `pmax`, in increasing order.
/// Fermat counts are added for primes up to `fermat_bound` when it is
/// given.
pub fn zeta_table(lambda: &Rational, pmax: u64, fermat_bound: Option<u64>) -> Result<ZetaTable, ArithError> {
    let primes = odd_primes_up_to(pmax);
    let b = eta46_coefficients(pmax.max(3));
    let results: Vec<Result<ZetaRecord, ArithError>> = primes
        .par_iter()
        .map(|&p| {
            let a_p = ap_legendre(lambda, p)?;
            let mut rec = assemble(lambda, p, a_p, b[p as usize]);
            if let Some(bound) = fermat_bound.filter(|&bd| p <= bd) {
                rec.fermat_count = Some(fermat_quartic_count(p, bound)?.count);
            }
            if p % 8 == 1 {
                let pred = 1 + 20 * p as i64 + rec.b_p + (p * p) as i64;
                rec.fermat_prediction = Some(pred as u64);
            }
            Ok(rec)
        })
        .collect();
    let mut records = Vec::new();
    let mut bad_primes = Vec::new();
    for (p, r) in primes.iter().zip(results) {
        match r {
            Ok(rec) => records.push(rec),
            Err(ArithError::BadReduction { .. }) => bad_primes.push(*p),
            Err(e) => return Err(e),
        }
    }
    Ok(ZetaTable {
        lambda: lambda.to_string(),
        records,
        bad_primes,
    })
}

/// Tab-separated rendering with a header row. Absent values print as `-`.
pub fn zeta_tsv(table: &ZetaTable) -> String {
    let mut out = String::from("p\ta_p\tb_p\tsym2_match\tweil_ok\tN_p\n");
    let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    for r in &table.records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            r.p,
            r.a_p,
            r.b_p,
            opt(r.sym2_match.map(|b| b.to_string())),
            r.weil_ok,
            opt(r.fermat_count.map(|n| n.to_string())),
        ));
    }
    out
}
