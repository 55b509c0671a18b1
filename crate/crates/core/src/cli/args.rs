use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{list, scalar, set_path, Format, Preset};
use crate::wavefield::Plane;

/// Quantized orbits, wave-field modes and guided trajectories.
///
/// Settings are layered: built-in defaults, then `--preset`, then the
/// `--config` file, then `PILOTWAVE_*` environment variables, then flags.
#[derive(Debug, Parser)]
#[command(name = "pilotwave", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML configuration file (also PILOTWAVE_CONFIG).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Parameter set of one of the figures or the mode-number table (also PILOTWAVE_PRESET).
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Fine-structure constant; exact fractions such as 1/3 are kept exact.
    #[arg(long, global = true, conflicts_with = "alpha_inv", allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// 1/alpha.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha_inv: Option<String>,
    /// Phase-scaling constant b.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Field charge ratio xi, so that beta = xi alpha.
    #[arg(long, global = true, conflicts_with = "beta", allow_hyphen_values = true)]
    pub xi: Option<f64>,
    /// Field charge parameter beta.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Field Compton frequency.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub omega0: Option<f64>,
    /// Effective particle mass (sets the mass unit).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m_eff: Option<f64>,
    /// Accept alpha beyond the bound where omega_- stays positive.
    #[arg(long, global = true)]
    pub allow_negative_frequencies: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to FILE instead of standard output.
    #[arg(short, long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Significant digits for floats (1..=17).
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Include a timestamp in the provenance block (default).
    #[arg(long, global = true, overrides_with = "no_timestamp")]
    pub timestamp: bool,
    /// Omit the timestamp so identical inputs give identical bytes.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args, Default)]
pub struct NArgs {
    /// Comma-separated azimuthal numbers, e.g. `1,2,3` or `1/2,3/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Fail when m+ or m- is not an integer.
    #[arg(long)]
    pub strict_n: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit quantities and mode numbers for each n.
    Orbit(NArgs),
    /// m+ and m- in the layout of the mode-number table.
    Table(NArgs),
    /// Total-field, phase-wave and orbit curves around the orbit.
    OrbitWave {
        #[command(flatten)]
        n: NArgs,
        #[arg(long)]
        samples: Option<usize>,
        /// Curve displacement as a fraction of r_n.
        #[arg(long)]
        delta_scale: Option<f64>,
        #[arg(long)]
        u0: Option<f64>,
    },
    /// Intensity |u|^2 on a plane through the nucleus.
    FieldMap {
        #[command(flatten)]
        n: NArgs,
        #[arg(long, value_enum)]
        plane: Option<Plane>,
        #[arg(long)]
        grid_n: Option<usize>,
        /// Half-width of the square in units of a0.
        #[arg(long)]
        extent: Option<f64>,
        #[arg(long)]
        u0: Option<f64>,
    },
    /// Integrate the particle along its orbit and report drifts.
    Integrate {
        #[command(flatten)]
        n: NArgs,
        #[arg(long)]
        periods: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        samples_per_period: Option<usize>,
        /// Multiply the internal clock frequency (detuning test).
        #[arg(long)]
        omega_p_scale: Option<f64>,
        #[arg(long)]
        u0: Option<f64>,
    },
    /// Run the invariant suite; exits 4 if any check fails.
    Check(NArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Orbit(_) => "orbit",
            Command::Table(_) => "table",
            Command::OrbitWave { .. } => "orbit-wave",
            Command::FieldMap { .. } => "field-map",
            Command::Integrate { .. } => "integrate",
            Command::Check(_) => "check",
        }
    }

    fn n_args(&self) -> &NArgs {
        match self {
            Command::Orbit(n) | Command::Table(n) | Command::Check(n) => n,
            Command::OrbitWave { n, .. } | Command::FieldMap { n, .. } | Command::Integrate { n, .. } => n,
        }
    }
}

fn put(t: &mut toml::Table, path: &[&str], v: Option<toml::Value>) {
    if let Some(v) = v {
        set_path(t, path, v);
    }
}

fn float(x: Option<f64>) -> Option<toml::Value> {
    x.map(toml::Value::Float)
}

fn int(x: Option<usize>) -> Option<toml::Value> {
    x.map(|i| toml::Value::Integer(i as i64))
}

impl Cli {
    /// The flag layer, highest precedence.
    pub fn layer(&self) -> toml::Table {
        let g = &self.global;
        let mut t = toml::Table::new();
        put(&mut t, &["params", "alpha"], g.alpha.as_deref().map(exact));
        put(&mut t, &["params", "alpha_inv"], g.alpha_inv.as_deref().map(exact));
        put(&mut t, &["params", "b"], g.b.as_deref().map(exact));
        put(&mut t, &["params", "xi_charge"], float(g.xi));
        put(&mut t, &["params", "beta"], float(g.beta));
        put(&mut t, &["params", "omega0"], float(g.omega0));
        if let Some(m) = g.m_eff {
            let mut mass = toml::Table::new();
            mass.insert("kind".into(), "effective".into());
            mass.insert("m_eff".into(), m.into());
            put(&mut t, &["params", "mass"], Some(toml::Value::Table(mass)));
        }
        if g.allow_negative_frequencies {
            put(&mut t, &["params", "allow_negative_frequencies"], Some(true.into()));
        }
        put(&mut t, &["output", "format"], g.format.map(|f| scalar_enum(&f)));
        put(
            &mut t,
            &["output", "path"],
            g.output.as_ref().map(|p| p.display().to_string().into()),
        );
        put(&mut t, &["output", "precision"], int(g.precision));
        if g.no_timestamp {
            put(&mut t, &["output", "timestamp"], Some(false.into()));
        } else if g.timestamp {
            put(&mut t, &["output", "timestamp"], Some(true.into()));
        }

        let n = self.command.n_args();
        put(&mut t, &["n"], n.n.as_deref().map(list));
        if n.strict_n {
            put(&mut t, &["strict_n"], Some(true.into()));
        }
        match &self.command {
            Command::OrbitWave {
                samples,
                delta_scale,
                u0,
                ..
            } => {
                put(&mut t, &["wave", "samples"], int(*samples));
                put(&mut t, &["wave", "delta_scale"], float(*delta_scale));
                put(&mut t, &["wave", "u0"], float(*u0));
            }
            Command::FieldMap {
                plane,
                grid_n,
                extent,
                u0,
                ..
            } => {
                put(&mut t, &["map", "plane"], plane.map(|p| scalar_enum(&p)));
                put(&mut t, &["map", "grid_n"], int(*grid_n));
                put(&mut t, &["map", "extent"], float(*extent));
                put(&mut t, &["map", "u0"], float(*u0));
            }
            Command::Integrate {
                periods,
                tol,
                samples_per_period,
                omega_p_scale,
                u0,
                ..
            } => {
                put(&mut t, &["integrate", "periods"], float(*periods));
                put(&mut t, &["integrate", "tol"], float(*tol));
                put(&mut t, &["integrate", "samples_per_period"], int(*samples_per_period));
                put(&mut t, &["integrate", "omega_p_scale"], float(*omega_p_scale));
                put(&mut t, &["integrate", "u0"], float(*u0));
            }
            _ => {}
        }
        t
    }
}

/// Exact-number flags: integers stay integers, anything else is kept as text.
fn exact(s: &str) -> toml::Value {
    match scalar(s) {
        v @ toml::Value::Integer(_) => v,
        _ => toml::Value::String(s.trim().into()),
    }
}

fn scalar_enum<T: serde::Serialize>(v: &T) -> toml::Value {
    toml::Value::try_from(v).expect("unit enum serializes to a string")
}
