use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantization::{parse_rational, rational_from_f64, MassSpec, PhysicalParams};
use crate::wavefield::Plane;

/// Prefix of environment overrides; `PILOTWAVE_MAP__GRID_N=64` sets `map.grid_n`.
pub const ENV_PREFIX: &str = "PILOTWAVE_";

/// A number that may be given exactly: an integer, a float, or a string such
/// as `"1/137"` or `"2.5e-3"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    pub fn exact(&self) -> Result<BigRational> {
        match self {
            Number::Int(i) => Ok(BigRational::from_integer((*i).into())),
            Number::Float(x) => rational_from_f64(*x),
            Number::Text(s) => parse_rational(s),
        }
    }

    pub fn value(&self) -> Result<f64> {
        Ok(crate::quantization::rational_to_f64(&self.exact()?))
    }
}

impl From<i64> for Number {
    fn from(i: i64) -> Self {
        Number::Int(i)
    }
}

impl From<&str> for Number {
    fn from(s: &str) -> Self {
        Number::Text(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// Parameter sets pinned by the figure captions and the mode-number table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Table2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsConfig {
    /// α, or give `alpha_inv` instead (exactly one of the two).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Number>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_inv: Option<Number>,
    pub b: Number,
    /// ξ = e′/e, or give `beta` = ξα instead. Defaults to 1/b.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_charge: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    pub omega0: f64,
    pub mass: MassSpec,
    pub allow_negative_frequencies: bool,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig {
            alpha: None,
            alpha_inv: None,
            b: Number::Int(1),
            xi_charge: None,
            beta: None,
            omega0: 0.0,
            mass: MassSpec::default(),
            allow_negative_frequencies: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveConfig {
    /// Points per curve; defaults to max(4097, 8 m₊ + 1).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Graphical amplitude Δ in units of rₙ (presentation only).
    pub delta_scale: f64,
    pub u0: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        WaveConfig {
            samples: None,
            delta_scale: 0.15,
            u0: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MapConfig {
    pub plane: Plane,
    pub grid_n: usize,
    /// Half-width in units of a₀; defaults to 2rₙ/a₀.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extent: Option<f64>,
    pub u0: f64,
}

impl Default for MapConfig {
    fn default() -> Self {
        MapConfig {
            plane: Plane::Equatorial,
            grid_n: 256,
            extent: None,
            u0: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegrateConfig {
    pub periods: f64,
    pub tol: f64,
    pub samples_per_period: usize,
    /// Multiplies Ω_p of the internal oscillator (1 = phase harmony).
    pub omega_p_scale: f64,
    pub u0: f64,
}

impl Default for IntegrateConfig {
    fn default() -> Self {
        IntegrateConfig {
            periods: 10.0,
            tol: 1e-12,
            samples_per_period: 64,
            omega_p_scale: 1.0,
            u0: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    /// Write here instead of standard output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// Significant digits of floating-point CSV cells.
    pub precision: usize,
    pub timestamp: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            format: Format::Csv,
            path: None,
            precision: 17,
            timestamp: true,
        }
    }
}

/// Everything a command needs, after all layers are merged.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub params: ParamsConfig,
    /// Azimuthal numbers; each command has its own default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<Number>>,
    /// Treat non-integer mode numbers as errors.
    pub strict_n: bool,
    pub wave: WaveConfig,
    pub map: MapConfig,
    pub integrate: IntegrateConfig,
    pub output: OutputConfig,
}

fn config_err(path: impl Into<String>, detail: impl std::fmt::Display) -> Error {
    Error::Config {
        path: path.into(),
        detail: detail.to_string(),
    }
}

/// Physical parameters with the exact α and b they were built from.
#[derive(Debug, Clone)]
pub struct ResolvedParams {
    pub params: PhysicalParams,
    pub alpha_exact: BigRational,
    pub b_exact: BigRational,
}

impl RunConfig {
    pub fn resolve_params(&self) -> Result<ResolvedParams> {
        let p = &self.params;
        let alpha_exact = match (&p.alpha, &p.alpha_inv) {
            (Some(_), Some(_)) => return Err(config_err("params.alpha", "give either alpha or alpha_inv, not both")),
            (Some(a), None) => a.exact().map_err(|e| config_err("params.alpha", e))?,
            (None, Some(inv)) => {
                let q = inv.exact().map_err(|e| config_err("params.alpha_inv", e))?;
                if q.is_zero() {
                    return Err(config_err("params.alpha_inv", "must be nonzero"));
                }
                BigRational::one() / q
            }
            (None, None) => BigRational::new(1.into(), 137.into()),
        };
        let b_exact = p.b.exact().map_err(|e| config_err("params.b", e))?;
        let to_f = crate::quantization::rational_to_f64;
        let alpha = to_f(&alpha_exact);
        let b = to_f(&b_exact);
        let mut params = PhysicalParams {
            alpha,
            b,
            xi_charge: if b != 0.0 { 1.0 / b } else { 1.0 },
            omega0: p.omega0,
            mass: p.mass,
            require_positive_frequencies: !p.allow_negative_frequencies,
        };
        match (p.xi_charge, p.beta) {
            (Some(_), Some(_)) => {
                return Err(config_err(
                    "params.xi_charge",
                    "give either xi_charge or beta, not both",
                ))
            }
            (Some(xi), None) => params = params.with_xi_charge(xi),
            (None, Some(beta)) => params = params.with_beta(beta),
            (None, None) => {}
        }
        params.validate().map_err(|e| match e {
            Error::InvalidParameter { field, detail } => config_err(format!("params.{field}"), detail),
            other => other,
        })?;
        Ok(ResolvedParams {
            params,
            alpha_exact,
            b_exact,
        })
    }

    /// The n list, or `default` when none was configured.
    pub fn n_values(&self, default: &[Number]) -> Result<Vec<(Number, BigRational, f64)>> {
        let list = self.n.clone().unwrap_or_else(|| default.to_vec());
        if list.is_empty() {
            return Err(Error::Usage("the n list is empty".into()));
        }
        list.into_iter()
            .enumerate()
            .map(|(i, n)| {
                let q = n.exact().map_err(|e| config_err(format!("n[{i}]"), e))?;
                let f = crate::quantization::rational_to_f64(&q);
                if !(f > 0.0) {
                    return Err(config_err(format!("n[{i}]"), format!("need n > 0, got {f}")));
                }
                Ok((n, q, f))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.resolve_params()?;
        let positive = |path: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(config_err(path, format!("need a positive finite value, got {v}")))
            }
        };
        positive("wave.delta_scale", self.wave.delta_scale)?;
        positive("wave.u0", self.wave.u0)?;
        if let Some(s) = self.wave.samples {
            if s < 3 {
                return Err(config_err("wave.samples", format!("need at least 3, got {s}")));
            }
        }
        if self.map.grid_n < crate::wavefield::MIN_GRID {
            return Err(config_err(
                "map.grid_n",
                format!("need at least {}, got {}", crate::wavefield::MIN_GRID, self.map.grid_n),
            ));
        }
        if let Some(e) = self.map.extent {
            positive("map.extent", e)?;
        }
        positive("map.u0", self.map.u0)?;
        if !(self.integrate.periods >= 0.0 && self.integrate.periods.is_finite()) {
            return Err(config_err("integrate.periods", "need a finite value >= 0"));
        }
        positive("integrate.tol", self.integrate.tol)?;
        if self.integrate.samples_per_period == 0 {
            return Err(config_err("integrate.samples_per_period", "need at least 1"));
        }
        positive("integrate.omega_p_scale", self.integrate.omega_p_scale)?;
        positive("integrate.u0", self.integrate.u0)?;
        if !(1..=17).contains(&self.output.precision) {
            return Err(config_err(
                "output.precision",
                format!("need 1..=17 significant digits, got {}", self.output.precision),
            ));
        }
        Ok(())
    }
}

/// Keys that exclude each other: setting one in a later layer drops the other.
const EXCLUSIVE: [(&str, &str); 2] = [("alpha", "alpha_inv"), ("xi_charge", "beta")];
/// Tables replaced as a whole rather than merged key by key.
const ATOMIC: [&str; 1] = ["mass"];

/// Deep-merge `over` into `base`.
pub fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        for (a, b) in EXCLUSIVE {
            if k == a {
                base.remove(b);
            } else if k == b {
                base.remove(a);
            }
        }
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(bt)), toml::Value::Table(vt)) if !ATOMIC.contains(&k.as_str()) => merge(bt, vt),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Set a dotted path such as `map.grid_n`.
pub fn set_path(table: &mut toml::Table, path: &[&str], value: toml::Value) {
    let mut over = toml::Table::new();
    let mut cur = &mut over;
    for (i, key) in path.iter().enumerate() {
        if i + 1 == path.len() {
            cur.insert(key.to_string(), value);
            break;
        }
        cur = cur
            .entry(key.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            .as_table_mut()
            .expect("fresh table");
    }
    merge(table, over);
}

/// Interpret a flag or environment string as a TOML scalar, falling back
/// to a string (so `1/137` stays exact).
pub fn scalar(s: &str) -> toml::Value {
    let s = s.trim();
    match toml::from_str::<toml::Table>(&format!("v = {s}")) {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(s.into())),
        Err(_) => toml::Value::String(s.into()),
    }
}

/// A comma-separated list such as `1/2,1,3/2` as a TOML array.
pub fn list(s: &str) -> toml::Value {
    toml::Value::Array(s.split(',').filter(|x| !x.trim().is_empty()).map(scalar).collect())
}

pub fn preset_layer(preset: Preset) -> toml::Table {
    let fig_params = || {
        let mut p = toml::Table::new();
        p.insert("alpha".into(), toml::Value::String("1/3".into()));
        p.insert("b".into(), toml::Value::Integer(1));
        p.insert("xi_charge".into(), toml::Value::Float(1.0));
        p.insert("omega0".into(), toml::Value::Float(0.0));
        p
    };
    let ints = |v: &[i64]| toml::Value::Array(v.iter().map(|&i| toml::Value::Integer(i)).collect());
    let mut t = toml::Table::new();
    let plane = |t: &mut toml::Table, p: &str| {
        let mut m = toml::Table::new();
        m.insert("plane".into(), toml::Value::String(p.into()));
        t.insert("map".into(), toml::Value::Table(m));
    };
    match preset {
        Preset::Fig1 => {
            t.insert("params".into(), toml::Value::Table(fig_params()));
            t.insert("n".into(), ints(&[1, 2, 3]));
        }
        Preset::Fig2 | Preset::Fig3 | Preset::Fig4 => {
            let n = match preset {
                Preset::Fig2 => 1,
                Preset::Fig3 => 2,
                _ => 3,
            };
            t.insert("params".into(), toml::Value::Table(fig_params()));
            t.insert("n".into(), ints(&[n]));
            plane(&mut t, "equatorial");
        }
        Preset::Fig5 => {
            t.insert("params".into(), toml::Value::Table(fig_params()));
            t.insert("n".into(), ints(&[1]));
            plane(&mut t, "meridian");
        }
        Preset::Table2 => {
            let mut p = toml::Table::new();
            p.insert("alpha_inv".into(), toml::Value::Integer(137));
            p.insert("b".into(), toml::Value::Integer(1));
            t.insert("params".into(), toml::Value::Table(p));
            t.insert("n".into(), list("\"1/2\",1,\"3/2\",2,\"5/2\",10"));
        }
    }
    t
}

/// Overrides from `PILOTWAVE_*` variables (other than CONFIG and PRESET);
/// a double underscore separates nesting levels.
pub fn env_layer(vars: &[(String, String)]) -> toml::Table {
    let mut t = toml::Table::new();
    let mut sorted: Vec<&(String, String)> = vars.iter().filter(|(k, _)| k.starts_with(ENV_PREFIX)).collect();
    sorted.sort();
    for (k, v) in sorted {
        let key = k[ENV_PREFIX.len()..].to_ascii_lowercase();
        if key == "config" || key == "preset" {
            continue;
        }
        let path: Vec<&str> = key.split("__").collect();
        let value = if path == ["n"] { list(v) } else { scalar(v) };
        set_path(&mut t, &path, value);
    }
    t
}

pub fn file_layer(path: &Path) -> Result<toml::Table> {
    let text = std::fs::read_to_string(path).map_err(|e| config_err(path.display().to_string(), e))?;
    toml::from_str(&text).map_err(|e| config_err(path.display().to_string(), e.message()))
}

/// Deserialize a merged table, reporting the exact field path on failure.
pub fn from_table(table: toml::Table) -> Result<RunConfig> {
    let cfg: RunConfig = serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
        let path = e.path().to_string();
        config_err(path, e.into_inner())
    })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Built-in defaults as the bottom layer; α is spelled out so the input
/// echo records it.
pub fn default_table() -> toml::Table {
    let mut t = match toml::Value::try_from(RunConfig::default()).expect("default config serializes") {
        toml::Value::Table(t) => t,
        _ => unreachable!("config is a table"),
    };
    set_path(&mut t, &["params", "alpha_inv"], toml::Value::Integer(137));
    t
}
