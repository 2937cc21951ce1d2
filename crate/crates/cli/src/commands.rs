//! Report entries for each subcommand.

use std::time::Instant;

use k3periods::arith::{bp_eta, fermat_quartic_count, zeta_table, zeta_tsv, ZetaTable};
use k3periods::deligne::verify_ratios;
use k3periods::hyperfun::{pi, pow10, theta_const, PrecComplex, Precision};
use k3periods::periods::{
    bps_series, check_identity, dwork_periods, lambda_q_series, legendre_frame, quad_map, QuadMap, IDENTITIES,
};
use k3periods::pfode::{continue_solution, error_digits, ContinuationPath, FuchsianOperator};
use k3periods::qseries::{RationalSeries, ThetaKind};
use k3periods::report::{complex_strings, float_string, ReportEntry};
use rayon::prelude::*;
use rug::{Float, Rational};
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Default continuation path to `lambda = 2`, passing below the real axis.
pub const LAMBDA_TWO_PATH: &str = r#"[["0.1","0"],["0.1","-1.2"],["2","0"]]"#;

pub const FERMAT_PRIMES: [u64; 5] = [17, 41, 73, 89, 97];

/// A report entry plus the one-line summary used by the text format.
pub struct Entry {
    pub entry: ReportEntry,
    pub summary: String,
}

fn entry(name: impl Into<String>, pass: bool, data: Value, summary: String) -> Entry {
    Entry {
        entry: ReportEntry {
            name: name.into(),
            pass,
            informational: false,
            seconds: None,
            data,
        },
        summary,
    }
}

fn failure(name: impl Into<String>, err: impl std::fmt::Display) -> Entry {
    let msg = err.to_string();
    entry(name, false, json!({ "error": msg }), msg)
}

/// Runs `f` and records its wall-clock time on every entry it returns when
/// timings were requested.
pub fn timed(cfg: &RunConfig, f: impl FnOnce() -> Vec<Entry>) -> Vec<Entry> {
    let start = Instant::now();
    let mut out = f();
    if cfg.timings {
        let secs = start.elapsed().as_secs_f64();
        for e in &mut out {
            e.entry.seconds = Some(secs);
        }
    }
    out
}

fn precision(cfg: &RunConfig) -> Precision {
    Precision::new(cfg.digits).expect("digits validated")
}

fn coefficient_strings(s: &RationalSeries, from: i64, to: i64) -> Vec<String> {
    (from..=to)
        .map(|k| s.coeff_at(&Rational::from(k)).map_or_else(|| "?".into(), |c| c.to_string()))
        .collect()
}

pub fn identities(cfg: &RunConfig, ids: &[String]) -> Vec<Entry> {
    let ids: Vec<String> = if ids.is_empty() {
        IDENTITIES.iter().map(|(id, _)| id.to_string()).collect()
    } else {
        ids.to_vec()
    };
    let prec = precision(cfg);
    ids.par_iter()
        .map(|id| {
            let name = format!("identity {id}");
            match check_identity(id, cfg.order, prec) {
                Ok(r) => {
                    let summary = format!("residual {} (tolerance {})", r.residual, r.tolerance);
                    entry(name, r.pass, serde_json::to_value(&r).expect("serializable"), summary)
                }
                Err(e) => failure(name, e),
            }
        })
        .collect()
}

pub fn lambda_series(terms: usize) -> Vec<Entry> {
    match lambda_q_series(terms) {
        Ok(s) => {
            let coeffs = coefficient_strings(&s, 1, terms as i64);
            let integral = (1..=terms as i64).all(|k| {
                s.coeff_at(&Rational::from(k))
                    .is_some_and(|c| *c.denom() == 1 && c.numer().is_divisible_u(16))
            });
            let summary = coeffs.join(", ");
            vec![entry(
                "lambda-series",
                integral,
                json!({ "variable": "q", "first_exponent": 1, "coefficients": coeffs }),
                summary,
            )]
        }
        Err(e) => vec![failure("lambda-series", e)],
    }
}

pub fn lambda_series_tsv(terms: usize) -> Result<String, String> {
    let s = lambda_q_series(terms).map_err(|e| e.to_string())?;
    let mut out = String::from("n\tcoefficient\n");
    for (k, c) in coefficient_strings(&s, 1, terms as i64).iter().enumerate() {
        out.push_str(&format!("{}\t{c}\n", k + 1));
    }
    Ok(out)
}

/// Twenty points on circles of radius 0.1, 0.2, 0.3.
pub fn mirror_grid() -> Vec<(f64, f64)> {
    (0..20)
        .map(|k| {
            let r = [0.1, 0.2, 0.3][k % 3];
            let ang = 0.15 + k as f64 * std::f64::consts::TAU / 20.0;
            (r * ang.cos(), r * ang.sin())
        })
        .collect()
}

pub fn mirror_map(cfg: &RunConfig, points: &[PrecComplex]) -> Vec<Entry> {
    let prec = precision(cfg);
    let bits = prec.bits();
    let tol = pow10(bits, -(cfg.digits as i32) + 20);
    let rows: Vec<Result<(Value, bool, Float), String>> = points
        .par_iter()
        .map(|l| {
            let l = l.with_prec(bits);
            let psi = match quad_map(&l) {
                QuadMap::Point { psi, .. } => psi,
                other => return Err(format!("no finite psi at lambda = {:?}: {other:?}", l.to_f64_pair())),
            };
            let tw = dwork_periods(&psi).map_err(|e| e.to_string())?.tau;
            let tl = k3periods::periods::legendre_periods(&l).map_err(|e| e.to_string())?.tau;
            let d = (&tw - &tl).abs();
            let row = json!({
                "lambda": complex_strings(&l),
                "psi": complex_strings(&psi),
                "tau_mirror": complex_strings(&tw),
                "tau_period": complex_strings(&tl),
                "difference": float_string(&Float::with_val(53, &d)),
            });
            Ok((row, d <= tol, d))
        })
        .collect();
    let mut data = Vec::new();
    let mut pass = true;
    let mut worst = Float::new(53);
    for r in rows {
        match r {
            Ok((row, ok, d)) => {
                pass &= ok;
                if d > worst {
                    worst = Float::with_val(53, &d);
                }
                data.push(row);
            }
            Err(e) => return vec![failure("mirror-map", e)],
        }
    }
    let tol_s = float_string(&Float::with_val(53, &tol));
    let summary = format!("{} points, max |W1/W0 - varpi1/varpi0| = {} (tolerance {tol_s})", data.len(), float_string(&worst));
    vec![entry("mirror-map", pass, json!({ "tolerance": tol_s, "points": data }), summary)]
}

fn close_entry(name: &str, got: &PrecComplex, want: &PrecComplex, tol: &Float) -> Entry {
    let d = (got - want).abs();
    let residual = float_string(&Float::with_val(53, &d));
    let data = json!({
        "value": complex_strings(got),
        "expected": complex_strings(want),
        "residual": residual,
        "tolerance": float_string(&Float::with_val(53, tol)),
    });
    entry(name, d <= *tol, data, format!("residual {residual}"))
}

/// Special values reached by continuing the Legendre periods.
pub fn special_values(cfg: &RunConfig) -> Vec<Entry> {
    let bits = precision(cfg).bits();
    let tol = pow10(bits, -(cfg.digits as i32) + 20);
    let op = FuchsianOperator::legendre();
    let mut out = Vec::new();

    let target = PrecComplex::from_real(Float::with_val(bits, 2).sqrt() * 2u32 - 2u32);
    let path = ContinuationPath::new(vec![PrecComplex::from_f64(bits, 0.1, 0.0), target]);
    let want = PrecComplex::new(Float::new(bits), Float::with_val(bits, 0.5).sqrt());
    match legendre_frame(path.start()).and_then(|f| Ok(continue_solution(&op, &path, &f)?)) {
        Ok(end) => out.push(close_entry("tau(2 sqrt 2 - 2) = i/sqrt 2", &(end.value(1) / end.value(0)), &want, &tol)),
        Err(e) => out.push(failure("tau(2 sqrt 2 - 2) = i/sqrt 2", e)),
    }

    let path = ContinuationPath::from_json(LAMBDA_TWO_PATH, bits).expect("valid path");
    match legendre_frame(path.start()).and_then(|f| Ok(continue_solution(&op, &path, &f)?)) {
        Ok(end) => {
            let tau = end.value(1) / end.value(0);
            out.push(close_entry("tau(2) = (-1+i)/2", &tau, &PrecComplex::from_f64(bits, -0.5, 0.5), &tol));
            let q = PrecComplex::new(Float::new(bits), -(-Float::with_val(bits, pi(bits) / 2u32)).exp());
            match theta_const(ThetaKind::Three, &q) {
                Ok(t3) => out.push(close_entry("varpi0(2) = theta3(i e^(-pi/2))^2", end.value(0), &t3.square(), &tol)),
                Err(e) => out.push(failure("varpi0(2) = theta3(i e^(-pi/2))^2", e)),
            }
        }
        Err(e) => out.push(failure("tau(2) = (-1+i)/2", e)),
    }
    out
}

/// Transport of the Legendre periods along a user path.
pub fn continue_path(cfg: &RunConfig, path: &ContinuationPath) -> Vec<Entry> {
    let op = FuchsianOperator::legendre();
    let result = legendre_frame(path.start()).and_then(|f| Ok(continue_solution(&op, path, &f)?));
    match result {
        Ok(end) => {
            let tau = end.value(1) / end.value(0);
            let err = error_digits(&end);
            let pass = err <= -(cfg.digits as f64) + 20.0;
            let data = json!({
                "path": path.waypoints.iter().map(complex_strings).collect::<Vec<_>>(),
                "varpi0": complex_strings(end.value(0)),
                "varpi1": complex_strings(end.value(1)),
                "tau": complex_strings(&tau),
                "log10_error_estimate": format!("{err:.1}"),
            });
            let [re, im] = complex_strings(&tau);
            let summary = format!("tau = {re} + {im} i, log10 error {err:.1}");
            vec![entry("continue", pass, data, summary)]
        }
        Err(e) => vec![failure("continue", e)],
    }
}

fn zeta_pass(t: &ZetaTable) -> (bool, Vec<u64>) {
    let mut pass = true;
    let mut mismatches = Vec::new();
    for r in &t.records {
        pass &= r.weil_ok && r.k3_roots_ok;
        if let (Some(n), Some(pred)) = (r.fermat_count, r.fermat_prediction) {
            pass &= n == pred;
        }
        if r.sym2_match == Some(false) {
            if r.p % 4 == 1 {
                pass = false;
            } else {
                mismatches.push(r.p);
            }
        }
    }
    (pass, mismatches)
}

pub fn zeta(cfg: &RunConfig, lambda: &Rational) -> (Vec<Entry>, Option<String>) {
    let name = format!("zeta lambda = {lambda}");
    match zeta_table(lambda, cfg.pmax, Some(cfg.quartic_bound)) {
        Ok(t) => {
            let (pass, mismatches) = zeta_pass(&t);
            let mut data = serde_json::to_value(&t).expect("serializable");
            if !mismatches.is_empty() {
                data["note"] = json!(format!(
                    "b_p = a_p^2 - 2p fails at the p = 3 mod 4 primes {mismatches:?}, where a_p = b_p = 0"
                ));
            }
            let summary = format!("{} good primes, bad primes {:?}", t.records.len(), t.bad_primes);
            (vec![entry(name, pass, data, summary)], Some(zeta_tsv(&t)))
        }
        Err(e) => (vec![failure(name, e)], None),
    }
}

pub fn fermat_count(cfg: &RunConfig, primes: &[u64]) -> Vec<Entry> {
    primes
        .par_iter()
        .map(|&p| {
            let name = format!("fermat-count p = {p}");
            let run = || -> Result<Entry, k3periods::ArithError> {
                let n = fermat_quartic_count(p, cfg.quartic_bound)?.count;
                let b = bp_eta(p)?;
                let pi = p as i64;
                let predicted = 1 + 20 * pi + b + pi * pi;
                let matches = n as i64 == predicted;
                let data = json!({ "p": p, "count": n, "b_p": b, "prediction": predicted, "matches": matches });
                let summary = format!("N = {n}, 1 + 20p + b_p + p^2 = {predicted}");
                let mut e = entry(name.clone(), matches, data, summary);
                // all twenty cycles are defined over F_p only for p = 1 mod 8
                e.entry.informational = p % 8 != 1;
                Ok(e)
            };
            run().unwrap_or_else(|e| failure(name.clone(), e))
        })
        .collect()
}

pub fn deligne(cfg: &RunConfig) -> Vec<Entry> {
    match verify_ratios(cfg.digits) {
        Ok((r1, r2, report)) => {
            let pass = r1 == 16 && r2 == -64 && report.checks.iter().all(|c| c.pass);
            let summary = format!("ratios {r1} and {r2}");
            vec![entry("deligne", pass, serde_json::to_value(&report).expect("serializable"), summary)]
        }
        Err(e) => vec![failure("deligne", e)],
    }
}

pub fn bps(cfg: &RunConfig, terms: usize) -> Vec<Entry> {
    let mut out = match bps_series(terms) {
        Ok(s) => {
            let coeffs = coefficient_strings(&s, -1, terms as i64 - 2);
            let summary = coeffs.iter().take(6).cloned().collect::<Vec<_>>().join(", ");
            let mut e = entry(
                "bps-series",
                true,
                json!({ "variable": "q^2", "first_exponent": -1, "coefficients": coeffs }),
                summary,
            );
            e.entry.informational = true;
            vec![e]
        }
        Err(e) => vec![failure("bps-series", e)],
    };
    out.extend(identities(cfg, &["BPS".to_string()]));
    out
}

pub fn bps_tsv(terms: usize) -> Result<String, String> {
    let s = bps_series(terms).map_err(|e| e.to_string())?;
    let mut out = String::from("n\tcoefficient\n");
    for (k, c) in coefficient_strings(&s, -1, terms as i64 - 2).iter().enumerate() {
        out.push_str(&format!("{}\t{c}\n", k as i64 - 1));
    }
    Ok(out)
}
