//! Run configuration as a flat map of dotted keys.
//!
//! Layers are applied in order: preset, config file, `--set` overrides,
//! later writers winning. Every value remembers where it came from so that
//! validation errors point at the offending line.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde_json::{Map, Value};

use crate::analysis::classify::ClassifierConfig;
use crate::grids::{BifurcationSpec, GridSpec2D};
use crate::map::{MapKind, State};
use crate::params::{ModelParams, RawParams};
use crate::stochastic::{MaConvention, ShockConfig, ShockScale};

/// Keys accepted in config files and `--set`.
pub const KNOWN_KEYS: &[&str] = &[
    "b", "c", "h", "alpha", "beta", "gamma", "theta", "rho",
    "x0", "y0", "map", "steps",
    "classifier.t_max", "classifier.r_div", "classifier.eps_fix", "classifier.w_tail",
    "classifier.p_max", "classifier.eps_rec", "classifier.transient", "classifier.analytic_exit",
    "grid.x_min", "grid.x_max", "grid.y_min", "grid.y_max", "grid.nx", "grid.ny",
    "bifurcation.b_min", "bifurcation.b_max", "bifurcation.c_min", "bifurcation.c_max",
    "bifurcation.nb", "bifurcation.nc",
    "cycles.k_max", "cycles.tol",
    "shock.sigma_d", "shock.sigma_delta", "shock.seed", "shock.t_max", "shock.f0", "shock.p0",
    "shock.p_minus1", "shock.ma", "shock.transient",
    "threads", "undecided_max", "note",
];

const AGGREGATE: [&str; 3] = ["b", "c", "h"];
const RAW: [&str; 5] = ["alpha", "beta", "gamma", "theta", "rho"];

/// Default threshold `h` when none is configured.
pub const DEFAULT_H: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Preset(String),
    File { path: String, line: usize },
    Set(String),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Preset(name) => write!(f, "preset {name}"),
            Source::File { path, line } => write!(f, "{path}:{line}"),
            Source::Set(arg) => write!(f, "--set {arg}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

type CResult<T> = std::result::Result<T, ConfigError>;

fn err<T>(msg: impl Into<String>) -> CResult<T> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    entries: BTreeMap<String, (Value, Source)>,
}

fn check_key(key: &str, source: &Source) -> CResult<()> {
    if KNOWN_KEYS.contains(&key) {
        Ok(())
    } else {
        err(format!("{source}: unknown key \"{key}\""))
    }
}

fn check_scalar(key: &str, value: &Value, source: &Source) -> CResult<()> {
    match value {
        Value::Array(_) | Value::Object(_) | Value::Null => {
            err(format!("{source}: \"{key}\" must be a number, string or boolean (use flat dotted keys)"))
        }
        _ => Ok(()),
    }
}

/// 1-based line of the first occurrence of `"key"` followed by a colon.
fn key_line(text: &str, key: &str) -> usize {
    let quoted = format!("\"{key}\"");
    text.lines()
        .position(|l| l.find(&quoted).is_some_and(|at| l[at + quoted.len()..].trim_start().starts_with(':')))
        .map_or(1, |i| i + 1)
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: &str, value: Value, source: Source) -> CResult<()> {
        check_key(key, &source)?;
        check_scalar(key, &value, &source)?;
        self.entries.insert(key.to_string(), (value, source));
        Ok(())
    }

    /// Adds the entries of a preset as the lowest layer.
    pub fn apply_preset(&mut self, name: &str, values: &[(&str, Value)]) -> CResult<()> {
        for (k, v) in values {
            self.insert(k, v.clone(), Source::Preset(name.to_string()))?;
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> CResult<()> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        self.load_str(&text, &path.display().to_string())
    }

    pub fn load_str(&mut self, text: &str, name: &str) -> CResult<()> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| ConfigError(format!("{name}:{}:{}: {e}", e.line(), e.column())))?;
        let Value::Object(map) = value else {
            return err(format!("{name}:1: top level must be a JSON object"));
        };
        for (k, v) in map {
            let source = Source::File { path: name.to_string(), line: key_line(text, &k) };
            self.insert(&k, v, source)?;
        }
        Ok(())
    }

    /// `key=value`; the value is read as JSON when possible, otherwise as a string.
    pub fn apply_set(&mut self, arg: &str) -> CResult<()> {
        let Some((k, v)) = arg.split_once('=') else {
            return err(format!("--set {arg}: expected key=value"));
        };
        let (k, v) = (k.trim(), v.trim());
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        self.insert(k, value, Source::Set(arg.to_string()))
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn source(&self, key: &str) -> Option<&Source> {
        self.entries.get(key).map(|(_, s)| s)
    }

    fn bad<T>(&self, key: &str, what: &str) -> CResult<T> {
        match self.entries.get(key) {
            Some((v, src)) => err(format!("{src}: \"{key}\" = {v} {what}")),
            None => err(format!("\"{key}\" {what}")),
        }
    }

    pub fn f64_opt(&self, key: &str) -> CResult<Option<f64>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((Value::Number(n), _)) => match n.as_f64() {
                Some(v) if v.is_finite() => Ok(Some(v)),
                _ => self.bad(key, "is not a finite number"),
            },
            Some(_) => self.bad(key, "must be a number"),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> CResult<f64> {
        Ok(self.f64_opt(key)?.unwrap_or(default))
    }

    pub fn f64_req(&self, key: &str) -> CResult<f64> {
        self.f64_opt(key)?.map_or_else(|| err(format!("missing required key \"{key}\"")), Ok)
    }

    pub fn u64_opt(&self, key: &str) -> CResult<Option<u64>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((Value::Number(n), _)) => match n.as_u64() {
                Some(v) => Ok(Some(v)),
                None => self.bad(key, "must be a nonnegative integer"),
            },
            Some(_) => self.bad(key, "must be a nonnegative integer"),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> CResult<usize> {
        match self.u64_opt(key)? {
            None => Ok(default),
            Some(v) => usize::try_from(v).or_else(|_| self.bad(key, "is too large")),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> CResult<bool> {
        match self.entries.get(key) {
            None => Ok(default),
            Some((Value::Bool(b), _)) => Ok(*b),
            Some(_) => self.bad(key, "must be true or false"),
        }
    }

    pub fn str_opt(&self, key: &str) -> Option<&str> {
        self.entries.get(key).and_then(|(v, _)| v.as_str())
    }

    /// Threshold `h`, from the aggregate key or from `rho / theta`.
    pub fn h(&self) -> CResult<f64> {
        if RAW.iter().any(|k| self.contains(k)) {
            Ok(self.raw_params()?.h())
        } else {
            let h = self.f64_or("h", DEFAULT_H)?;
            if h > 0.0 { Ok(h) } else { self.bad("h", "must be positive") }
        }
    }

    fn raw_params(&self) -> CResult<RawParams> {
        let v: Vec<f64> = RAW.iter().map(|k| self.f64_req(k)).collect::<CResult<_>>()?;
        RawParams::new(v[0], v[1], v[2], v[3], v[4]).map_err(|e| self.located(e, &RAW))
    }

    /// `(b, c, h)` from exactly one parameterization.
    pub fn model_params(&self) -> CResult<ModelParams> {
        let agg: Vec<&str> = AGGREGATE.iter().copied().filter(|k| self.contains(k)).collect();
        let raw: Vec<&str> = RAW.iter().copied().filter(|k| self.contains(k)).collect();
        if !agg.is_empty() && !raw.is_empty() {
            let a = self.source(agg[0]).unwrap();
            let r = self.source(raw[0]).unwrap();
            return err(format!(
                "conflicting parameterizations: \"{}\" ({a}) and \"{}\" ({r}); give either b, c, h or alpha, beta, gamma, theta, rho",
                agg[0], raw[0]
            ));
        }
        if !raw.is_empty() {
            return self.raw_params()?.aggregate().map_err(|e| self.located(e, &RAW));
        }
        let (b, c, h) = (self.f64_req("b")?, self.f64_req("c")?, self.h()?);
        ModelParams::new(b, c, h).map_err(|e| self.located(e, &["b", "c", "h"]))
    }

    /// Prefixes a parameter error with where the offending key was set.
    fn located(&self, e: crate::Error, keys: &[&str]) -> ConfigError {
        let named = match &e {
            crate::Error::InvalidParameter { name, .. } => self.source(name),
            _ => None,
        };
        let at = named
            .or_else(|| keys.iter().find_map(|k| self.source(k)))
            .map_or_else(|| "parameters".to_string(), |s| s.to_string());
        ConfigError(format!("{at}: {e}"))
    }

    pub fn initial_state(&self) -> CResult<State> {
        Ok(State::new(self.f64_or("x0", 0.1)?, self.f64_or("y0", 0.0)?))
    }

    pub fn map_kind(&self) -> CResult<MapKind> {
        match self.str_opt("map") {
            None if !self.contains("map") => Ok(MapKind::M),
            Some(s) => s.parse().or_else(|_| self.bad("map", "must be M, F or C")),
            None => self.bad("map", "must be M, F or C"),
        }
    }

    pub fn classifier(&self) -> CResult<ClassifierConfig> {
        let d = ClassifierConfig::default();
        let cfg = ClassifierConfig {
            t_max: self.usize_or("classifier.t_max", d.t_max)?,
            r_div: self.f64_opt("classifier.r_div")?,
            eps_fix: self.f64_or("classifier.eps_fix", d.eps_fix)?,
            w_tail: self.usize_or("classifier.w_tail", d.w_tail)?,
            p_max: self.usize_or("classifier.p_max", d.p_max)?,
            eps_rec: self.f64_or("classifier.eps_rec", d.eps_rec)?,
            transient: self.usize_or("classifier.transient", d.transient)?,
            analytic_exit: self.bool_or("classifier.analytic_exit", d.analytic_exit)?,
        };
        cfg.validate(self.h()?).map_err(|e| self.located(e, &["classifier.t_max", "classifier.w_tail", "classifier.p_max"]))?;
        Ok(cfg)
    }

    /// Basin window; defaults to `[-5h, 5h]²` at 250 x 250.
    pub fn grid(&self) -> CResult<GridSpec2D> {
        let r = 5.0 * self.h()?;
        let g = GridSpec2D {
            x_min: self.f64_or("grid.x_min", -r)?,
            x_max: self.f64_or("grid.x_max", r)?,
            y_min: self.f64_or("grid.y_min", -r)?,
            y_max: self.f64_or("grid.y_max", r)?,
            nx: self.usize_or("grid.nx", 250)?,
            ny: self.usize_or("grid.ny", 250)?,
        };
        g.validate().map_err(|e| self.located(e, &["grid.nx", "grid.x_min", "grid.x_max"]))?;
        Ok(g)
    }

    pub fn bifurcation(&self) -> CResult<BifurcationSpec> {
        let s = BifurcationSpec {
            b_min: self.f64_or("bifurcation.b_min", 0.0)?,
            b_max: self.f64_or("bifurcation.b_max", 1.1)?,
            c_min: self.f64_or("bifurcation.c_min", 0.0)?,
            c_max: self.f64_or("bifurcation.c_max", 4.4)?,
            nb: self.usize_or("bifurcation.nb", 250)?,
            nc: self.usize_or("bifurcation.nc", 250)?,
            h: self.h()?,
            initial: self.initial_state()?,
        };
        s.validate().map_err(|e| self.located(e, &["bifurcation.nb", "bifurcation.b_min"]))?;
        Ok(s)
    }

    pub fn shock(&self) -> CResult<ShockConfig> {
        let scale = match (self.f64_opt("shock.sigma_d")?, self.f64_opt("shock.sigma_delta")?) {
            (Some(_), Some(_)) => return self.bad("shock.sigma_delta", "conflicts with shock.sigma_d; give exactly one"),
            (Some(s), None) => ShockScale::Deviation(s),
            (None, Some(s)) => ShockScale::Delta(s),
            (None, None) => ShockScale::Deviation(0.005),
        };
        let ma = match self.str_opt("shock.ma") {
            None if !self.contains("shock.ma") => MaConvention::AsPublished,
            Some("as-published") => MaConvention::AsPublished,
            Some("price-consistent") => MaConvention::PriceConsistent,
            _ => return self.bad("shock.ma", "must be \"as-published\" or \"price-consistent\""),
        };
        let f0 = self.f64_or("shock.f0", 100.0)?;
        let s0 = self.initial_state_or_origin()?;
        let sc = ShockConfig {
            scale,
            seed: self.u64_opt("shock.seed")?.unwrap_or(12),
            t_max: self.usize_or("shock.t_max", 10_000)?,
            f0,
            p0: self.f64_or("shock.p0", f0 + s0.x)?,
            p_minus1: self.f64_or("shock.p_minus1", f0 + s0.y)?,
            ma,
        };
        sc.validate().map_err(|e| self.located(e, &["shock.sigma_d", "shock.sigma_delta"]))?;
        Ok(sc)
    }

    fn initial_state_or_origin(&self) -> CResult<State> {
        Ok(State::new(self.f64_or("x0", 0.0)?, self.f64_or("y0", 0.0)?))
    }

    pub fn undecided_max(&self) -> CResult<f64> {
        let v = self.f64_or("undecided_max", 0.001)?;
        if (0.0..=1.0).contains(&v) { Ok(v) } else { self.bad("undecided_max", "must lie in [0, 1]") }
    }

    /// Flat JSON object of every configured key.
    pub fn resolved(&self) -> Map<String, Value> {
        self.entries.iter().map(|(k, (v, _))| (k.clone(), v.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_set_last_writer_wins() {
        let mut s = Settings::new();
        s.load_str("{\n  \"b\": 0.8,\n  \"c\": 1.0,\n  \"h\": 0.05\n}", "cfg.json").unwrap();
        s.apply_set("c=2.5").unwrap();
        s.apply_set("c=2.6").unwrap();
        let p = s.model_params().unwrap();
        assert_eq!((p.b, p.c, p.h), (0.8, 2.6, 0.05));
        assert_eq!(s.source("b"), Some(&Source::File { path: "cfg.json".into(), line: 2 }));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let mut s = Settings::new();
        let e = s.load_str("{\n  \"b\": 0.8,\n  \"c\" 1.0\n}", "cfg.json").unwrap_err();
        assert!(e.0.starts_with("cfg.json:3:"), "{e}");
        let mut s = Settings::new();
        let e = s.load_str("{\n  \"b\": 0.8,\n  \"grid.nz\": 3\n}", "cfg.json").unwrap_err();
        assert!(e.0.starts_with("cfg.json:3: unknown key"), "{e}");
        let mut s = Settings::new();
        s.load_str("{\n  \"b\": 0.8,\n  \"c\": 1.0,\n  \"grid.nx\": -4\n}", "cfg.json").unwrap();
        let e = s.grid().unwrap_err();
        assert!(e.0.starts_with("cfg.json:4:"), "{e}");
    }

    #[test]
    fn conflicting_parameterizations() {
        let mut s = Settings::new();
        for kv in ["b=0.8", "c=1", "h=0.05", "alpha=1"] {
            s.apply_set(kv).unwrap();
        }
        assert!(s.model_params().unwrap_err().0.contains("conflicting"));
    }

    #[test]
    fn raw_parameterization() {
        let mut s = Settings::new();
        for kv in ["alpha=1", "beta=0.8", "gamma=2.5", "theta=0.5", "rho=0.025"] {
            s.apply_set(kv).unwrap();
        }
        let p = s.model_params().unwrap();
        assert_eq!((p.b, p.c), (0.8, 2.5));
        assert!((p.h - 0.05).abs() < 1e-15);
    }

    #[test]
    fn shock_scale_exclusive() {
        let mut s = Settings::new();
        s.apply_set("shock.sigma_d=0.005").unwrap();
        s.apply_set("shock.sigma_delta=0.004").unwrap();
        assert!(s.shock().is_err());
    }

    #[test]
    fn large_seed_is_exact() {
        let mut s = Settings::new();
        s.apply_set("shock.seed=18446744073709551615").unwrap();
        assert_eq!(s.shock().unwrap().seed, u64::MAX);
    }
}
