//! Run settings: scenario defaults, then the config file (global keys, then
//! the section named after the scenario), then command-line flags.
//!
//! The config file is flat `key = value` text. `#` starts a comment and
//! `[name]` opens a section that applies only to scenario `name`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use hyperspinor_core::spin::{types_for, Sigma};

use crate::error::{CliError, CliResult};

pub const KEYS: &[&str] = &["n", "sigma", "lambda", "t", "rmax", "grid", "seed", "samples", "format", "out"];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    pub global: BTreeMap<String, String>,
    pub sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut out = ConfigFile::default();
        let mut section: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim();
                if name.is_empty() {
                    return Err(CliError::Usage(format!("config line {}: empty section name", i + 1)));
                }
                out.sections.entry(name.to_string()).or_default();
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Usage(format!("config line {}: unknown key '{key}'", i + 1)));
            }
            let map = match &section {
                Some(s) => out.sections.get_mut(s).expect("section inserted above"),
                None => &mut out.global,
            };
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(out)
    }

    pub fn load(path: &std::path::Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Global values overlaid with the scenario's section.
    pub fn for_scenario(&self, scenario: &str) -> BTreeMap<String, String> {
        let mut map = self.global.clone();
        if let Some(s) = self.sections.get(scenario) {
            map.extend(s.iter().map(|(k, v)| (k.clone(), v.clone())));
        }
        map
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format '{other}'"))),
        }
    }
}

/// Numerical parameters of a scenario run.
#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    pub n: Vec<usize>,
    /// None means the default types for each n.
    pub sigma: Option<Vec<Sigma>>,
    pub lambda: Vec<f64>,
    pub t: Vec<f64>,
    pub rmax: f64,
    /// None means the scenario picks a grid order per n.
    pub grid: Option<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            n: vec![3],
            sigma: None,
            lambda: vec![1.0],
            t: vec![1.0],
            rmax: 8.0,
            grid: None,
            seed: 1,
            samples: 100,
        }
    }
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("{key}: cannot parse '{s}'"))))
        .collect()
}

fn scalar<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{key}: cannot parse '{value}'")))
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        match key {
            "n" => self.n = list(key, value)?,
            "sigma" => {
                let labels: Vec<String> = list(key, value)?;
                let parsed: Result<Vec<Sigma>, _> = labels.iter().map(|l| l.parse::<Sigma>()).collect();
                self.sigma = Some(parsed.map_err(|e| CliError::Usage(e.to_string()))?);
            }
            "lambda" => self.lambda = list(key, value)?,
            "t" => self.t = list(key, value)?,
            "rmax" => self.rmax = scalar(key, value)?,
            "grid" => self.grid = Some(scalar(key, value)?),
            "seed" => self.seed = scalar(key, value)?,
            "samples" => self.samples = scalar(key, value)?,
            _ => return Err(CliError::Usage(format!("unknown setting '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self, allowed_n: &[usize]) -> CliResult<()> {
        if self.n.is_empty() {
            return Err(CliError::Usage("n: empty list".into()));
        }
        for n in &self.n {
            if !allowed_n.contains(n) {
                return Err(CliError::Usage(format!("n = {n} not supported here (allowed {allowed_n:?})")));
            }
        }
        if let Some(l) = self.lambda.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
            return Err(CliError::Usage(format!("lambda entries must be positive, got {l}")));
        }
        if let Some(t) = self.t.iter().find(|t| !t.is_finite()) {
            return Err(CliError::Usage(format!("t entries must be finite, got {t}")));
        }
        if !(self.rmax > 0.0 && self.rmax.is_finite()) {
            return Err(CliError::Usage(format!("rmax must be positive, got {}", self.rmax)));
        }
        if self.grid == Some(0) || self.samples == 0 {
            return Err(CliError::Usage("grid and samples must be positive".into()));
        }
        for (n, label) in self.types() {
            types_for(n, label).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        Ok(())
    }

    /// `(n, sigma label)` pairs in run order.
    pub fn types(&self) -> Vec<(usize, Sigma)> {
        let mut out = Vec::new();
        for &n in &self.n {
            let labels = match &self.sigma {
                Some(s) => s.clone(),
                None if n % 2 == 0 => vec![Sigma::Full],
                None => vec![Sigma::Plus, Sigma::Minus],
            };
            out.extend(labels.into_iter().map(|l| (n, l)));
        }
        out
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        m.insert("n".into(), self.n.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        m.insert(
            "sigma".into(),
            self.sigma
                .as_ref()
                .map(|s| s.iter().map(|x| x.label()).collect::<Vec<_>>().join(","))
                .unwrap_or_else(|| "default".into()),
        );
        m.insert("lambda".into(), join(&self.lambda));
        m.insert("t".into(), join(&self.t));
        m.insert("rmax".into(), self.rmax.to_string());
        m.insert("grid".into(), self.grid.map(|g| g.to_string()).unwrap_or_else(|| "default".into()));
        m.insert("seed".into(), self.seed.to_string());
        m.insert("samples".into(), self.samples.to_string());
        m
    }
}

/// Fully resolved invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Invocation {
    pub settings: Settings,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Layer `overrides` (already in precedence order) on top of `defaults`.
pub fn resolve(defaults: Settings, layers: &[BTreeMap<String, String>]) -> CliResult<Invocation> {
    let mut settings = defaults;
    let mut format = Format::Csv;
    let mut out = None;
    for layer in layers {
        for (k, v) in layer {
            match k.as_str() {
                "format" => format = v.parse()?,
                "out" => out = Some(PathBuf::from(v)),
                _ => settings.set(k, v)?,
            }
        }
    }
    Ok(Invocation { settings, format, out })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "
# shared
seed = 7
lambda = 0.5, 1.0

[strichartz-limit]
rmax = 60   # trailing comment
n = 2
";

    #[test]
    fn sections_overlay_globals() {
        let cfg = ConfigFile::parse(TEXT).unwrap();
        let m = cfg.for_scenario("strichartz-limit");
        assert_eq!(m["seed"], "7");
        assert_eq!(m["rmax"], "60");
        assert!(!cfg.for_scenario("jacobi-connection").contains_key("rmax"));
    }

    #[test]
    fn flags_override_file_values() {
        let cfg = ConfigFile::parse(TEXT).unwrap();
        let mut flags = BTreeMap::new();
        flags.insert("rmax".to_string(), "30".to_string());
        flags.insert("format".to_string(), "json".to_string());
        let inv = resolve(Settings::default(), &[cfg.for_scenario("strichartz-limit"), flags]).unwrap();
        assert_eq!(inv.settings.rmax, 30.0);
        assert_eq!(inv.settings.n, vec![2]);
        assert_eq!(inv.settings.lambda, vec![0.5, 1.0]);
        assert_eq!(inv.format, Format::Json);
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        assert!(matches!(ConfigFile::parse("colour = red"), Err(CliError::Usage(_))));
        assert!(matches!(ConfigFile::parse("no equals sign"), Err(CliError::Usage(_))));
        let mut s = Settings::default();
        assert!(s.set("lambda", "1,x").is_err());
        s.set("lambda", "0,1").unwrap();
        assert!(s.validate(&[3]).is_err());
        let mut s = Settings::default();
        s.set("sigma", "full").unwrap();
        assert!(s.validate(&[3]).is_err());
        s.set("n", "2").unwrap();
        assert!(s.validate(&[2, 3]).is_ok());
    }

    #[test]
    fn default_types_follow_parity() {
        let mut s = Settings::default();
        s.set("n", "2,3").unwrap();
        assert_eq!(s.types(), vec![(2, Sigma::Full), (3, Sigma::Plus), (3, Sigma::Minus)]);
    }
}
