//! `k3periods`: verification reports for periods, q-series identities,
//! zeta factors and L-value ratios.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use k3periods::arith::is_prime;
use k3periods::hyperfun::{PrecComplex, Precision};
use k3periods::pfode::ContinuationPath;
use k3periods::report::VerificationReport;
use rug::Rational;
use serde_json::json;

use commands::Entry;
use config::{Format, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "k3periods", version, about = "Verification reports for K3 and elliptic periods")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Working precision in decimal digits (at least 30) [default: 120]
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(30..))]
    digits: Option<u32>,
    /// Series truncation order (at least 4) [default: 40]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(4..))]
    order: Option<u64>,
    /// Largest prime in zeta tables [default: 500]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pmax: Option<u64>,
    /// Largest prime for exhaustive Fermat-quartic counts [default: 101]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    quartic_bound: Option<u64>,
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report to this file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// JSON file with default values for the options above
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Record wall-clock seconds per entry (makes output non-reproducible)
    #[arg(long, global = true)]
    timings: bool,
    /// Worker threads for per-prime and per-point work [default: all cores]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check identities of the registry (all of them by default)
    Identities {
        /// Identity id, e.g. QT1; may be repeated
        #[arg(long = "id")]
        ids: Vec<String>,
    },
    /// Coefficients of lambda(tau) in the nome q
    LambdaSeries {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        terms: u64,
    },
    /// Compare the Dwork mirror map with the Legendre period map
    MirrorMap {
        /// Point `re,im` in the lambda plane; may be repeated [default: 20-point grid with |lambda| <= 0.3]
        #[arg(long = "lambda", value_parser = parse_point)]
        points: Vec<(String, String)>,
    },
    /// Continue the Legendre periods along a path
    Continue {
        /// JSON waypoints `[["re","im"], ...]`, first one inside |lambda| < 1/2 [default: special-value checks]
        #[arg(long)]
        path: Option<String>,
    },
    /// Zeta factors at good primes for the Legendre fiber at lambda
    Zeta {
        #[arg(long, default_value = "2", value_parser = parse_rational)]
        lambda: Rational,
    },
    /// Exhaustive projective point counts of the Fermat quartic
    FermatCount {
        /// Odd prime; may be repeated [default: 17 41 73 89 97]
        #[arg(long = "p")]
        primes: Vec<u64>,
    },
    /// L-values, Deligne periods and their rational ratios
    Deligne,
    /// BPS expansion 1/eta^24 and its lambda-form identity
    Bps {
        /// Number of coefficients [default: --order]
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        terms: Option<u64>,
    },
    /// Everything above with default arguments
    All,
}

fn parse_point(s: &str) -> Result<(String, String), String> {
    let (re, im) = s.split_once(',').ok_or("expected `re,im`")?;
    let (re, im) = (re.trim().to_string(), im.trim().to_string());
    PrecComplex::parse(64, &re, &im).map_err(|e| e.to_string())?;
    Ok((re, im))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim().parse::<Rational>().map_err(|e| format!("`{s}`: {e}"))
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    eprintln!("Run `k3periods --help` for usage.");
    ExitCode::from(2)
}

fn render_text(report: &VerificationReport, entries: &[Entry]) -> String {
    let mut out = String::new();
    for e in entries {
        let status = match (e.entry.pass, e.entry.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        out.push_str(&format!("{status} {}: {}", e.entry.name, e.summary));
        if let Some(s) = e.entry.seconds {
            out.push_str(&format!(" [{s:.3}s]"));
        }
        out.push('\n');
    }
    out.push_str(if report.pass { "overall: PASS\n" } else { "overall: FAIL\n" });
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = cli.global;
    let flags = Overrides {
        digits: g.digits,
        order: g.order.map(|o| o as usize),
        pmax: g.pmax,
        quartic_bound: g.quartic_bound,
        format: g.format,
        output: g.output,
        timings: g.timings,
    };
    let cfg = match RunConfig::resolve(g.config.as_deref(), flags) {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    if let Some(n) = g.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            return usage_error(&e.to_string());
        }
    }
    let bits = Precision::new(cfg.digits).expect("validated").bits();

    let (name, args) = match &cli.command {
        Command::Identities { ids } => ("identities", json!({ "ids": ids })),
        Command::LambdaSeries { terms } => ("lambda-series", json!({ "terms": terms })),
        Command::MirrorMap { points } => ("mirror-map", json!({ "points": points })),
        Command::Continue { path } => ("continue", json!({ "path": path })),
        Command::Zeta { lambda } => ("zeta", json!({ "lambda": lambda.to_string() })),
        Command::FermatCount { primes } => ("fermat-count", json!({ "primes": primes })),
        Command::Deligne => ("deligne", json!({})),
        Command::Bps { terms } => ("bps", json!({ "terms": terms })),
        Command::All => ("all", json!({})),
    };
    let tsv_ok = matches!(cli.command, Command::Zeta { .. } | Command::LambdaSeries { .. } | Command::Bps { .. });
    if cfg.format == Format::Tsv && !tsv_ok {
        return usage_error(&format!("tsv output is available for zeta, lambda-series and bps, not {name}"));
    }

    let mut entries: Vec<Entry> = Vec::new();
    let mut tsv: Option<Result<String, String>> = None;
    match &cli.command {
        Command::Identities { ids } => entries.extend(commands::timed(&cfg, || commands::identities(&cfg, ids))),
        Command::LambdaSeries { terms } => {
            let terms = *terms as usize;
            entries.extend(commands::timed(&cfg, || commands::lambda_series(terms)));
            tsv = Some(commands::lambda_series_tsv(terms));
        }
        Command::MirrorMap { points } => {
            let pts: Vec<PrecComplex> = if points.is_empty() {
                commands::mirror_grid().iter().map(|&(re, im)| PrecComplex::from_f64(bits, re, im)).collect()
            } else {
                points.iter().map(|(re, im)| PrecComplex::parse(bits, re, im).expect("validated")).collect()
            };
            entries.extend(commands::timed(&cfg, || commands::mirror_map(&cfg, &pts)));
        }
        Command::Continue { path: None } => entries.extend(commands::timed(&cfg, || commands::special_values(&cfg))),
        Command::Continue { path: Some(text) } => {
            let path = match ContinuationPath::from_json(text, bits) {
                Ok(p) => p,
                Err(e) => return usage_error(&e.to_string()),
            };
            entries.extend(commands::timed(&cfg, || commands::continue_path(&cfg, &path)));
        }
        Command::Zeta { lambda } => {
            let mut table = None;
            entries.extend(commands::timed(&cfg, || {
                let (e, t) = commands::zeta(&cfg, lambda);
                table = t;
                e
            }));
            tsv = Some(table.ok_or_else(|| "zeta table could not be computed".to_string()));
        }
        Command::FermatCount { primes } => {
            let primes = if primes.is_empty() { commands::FERMAT_PRIMES.to_vec() } else { primes.clone() };
            if let Some(p) = primes.iter().find(|&&p| p == 2 || !is_prime(p) || p > cfg.quartic_bound) {
                return usage_error(&format!("{p} is not an odd prime up to --quartic-bound {}", cfg.quartic_bound));
            }
            entries.extend(commands::timed(&cfg, || commands::fermat_count(&cfg, &primes)));
        }
        Command::Deligne => entries.extend(commands::timed(&cfg, || commands::deligne(&cfg))),
        Command::Bps { terms } => {
            let terms = terms.map_or(cfg.order, |t| t as usize);
            entries.extend(commands::timed(&cfg, || commands::bps(&cfg, terms)));
            tsv = Some(commands::bps_tsv(terms));
        }
        Command::All => {
            let grid: Vec<PrecComplex> =
                commands::mirror_grid().iter().map(|&(re, im)| PrecComplex::from_f64(bits, re, im)).collect();
            let primes: Vec<u64> =
                commands::FERMAT_PRIMES.iter().copied().filter(|&p| p <= cfg.quartic_bound).collect();
            entries.extend(commands::timed(&cfg, || commands::identities(&cfg, &[])));
            entries.extend(commands::timed(&cfg, || commands::lambda_series(6)));
            entries.extend(commands::timed(&cfg, || commands::mirror_map(&cfg, &grid)));
            entries.extend(commands::timed(&cfg, || commands::special_values(&cfg)));
            entries.extend(commands::timed(&cfg, || commands::zeta(&cfg, &Rational::from(2)).0));
            entries.extend(commands::timed(&cfg, || commands::fermat_count(&cfg, &primes)));
            entries.extend(commands::timed(&cfg, || commands::deligne(&cfg)));
            entries.extend(commands::timed(&cfg, || commands::bps(&cfg, cfg.order)));
        }
    }

    let mut config_echo = cfg.echo();
    config_echo["arguments"] = args;
    let mut report = VerificationReport::new(name, config_echo);
    for e in &entries {
        report.push(e.entry.clone());
    }

    let body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => render_text(&report, &entries),
        Format::Tsv => match tsv.expect("tsv checked above") {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
