//! Run configuration: flags layered over an optional JSON defaults file.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Text => "text",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub digits: u32,
    pub order: usize,
    pub pmax: u64,
    pub quartic_bound: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: 120,
            order: 40,
            pmax: 500,
            quartic_bound: 101,
            format: Format::Json,
            output: None,
            timings: false,
        }
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub digits: Option<u32>,
    pub order: Option<usize>,
    pub pmax: Option<u64>,
    pub quartic_bound: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub timings: bool,
}

fn field_u64(v: &Value, key: &str) -> Result<Option<u64>, String> {
    match v.get(key) {
        None => Ok(None),
        Some(x) => x.as_u64().map(Some).ok_or_else(|| format!("config field `{key}` must be a non-negative integer")),
    }
}

impl RunConfig {
    /// Defaults, then the config file (if any), then command-line flags.
    pub fn resolve(file: Option<&Path>, flags: Overrides) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            if !v.is_object() {
                return Err(format!("{}: expected a JSON object", path.display()));
            }
            if let Some(d) = field_u64(&v, "digits")? {
                cfg.digits = u32::try_from(d).map_err(|_| "digits out of range".to_string())?;
            }
            if let Some(o) = field_u64(&v, "order")? {
                cfg.order = o as usize;
            }
            if let Some(p) = field_u64(&v, "pmax")? {
                cfg.pmax = p;
            }
            if let Some(q) = field_u64(&v, "quartic_bound")? {
                cfg.quartic_bound = q;
            }
            if let Some(f) = v.get("format") {
                let s = f.as_str().ok_or("config field `format` must be a string")?;
                cfg.format = Format::from_str(s, true).map_err(|_| format!("unknown format `{s}`"))?;
            }
        }
        if let Some(d) = flags.digits {
            cfg.digits = d;
        }
        if let Some(o) = flags.order {
            cfg.order = o;
        }
        if let Some(p) = flags.pmax {
            cfg.pmax = p;
        }
        if let Some(q) = flags.quartic_bound {
            cfg.quartic_bound = q;
        }
        if let Some(f) = flags.format {
            cfg.format = f;
        }
        cfg.output = flags.output;
        cfg.timings = flags.timings;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.digits < 30 {
            return Err(format!("digits must be at least 30, got {}", self.digits));
        }
        if self.order < 4 {
            return Err(format!("order must be at least 4, got {}", self.order));
        }
        if self.pmax == 0 || self.quartic_bound == 0 {
            return Err("prime bounds must be positive".into());
        }
        Ok(())
    }

    /// Echo written into every report. Output path and timing flag are
    /// left out so the report depends only on what was computed.
    pub fn echo(&self) -> Value {
        json!({
            "digits": self.digits,
            "order": self.order,
            "pmax": self.pmax,
            "quartic_bound": self.quartic_bound,
            "format": self.format.name(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("k3cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"digits": 60, "order": 12, "format": "text"}"#).unwrap();
        let cfg = RunConfig::resolve(Some(&path), Overrides { order: Some(20), ..Default::default() }).unwrap();
        assert_eq!((cfg.digits, cfg.order, cfg.format), (60, 20, Format::Text));
        assert_eq!(cfg.pmax, 500);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn invariants_enforced() {
        let low = Overrides { digits: Some(10), ..Default::default() };
        assert!(RunConfig::resolve(None, low).is_err());
        let short = Overrides { order: Some(3), ..Default::default() };
        assert!(RunConfig::resolve(None, short).is_err());
    }
}
