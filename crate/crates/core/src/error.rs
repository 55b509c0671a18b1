use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::TrajectoryState;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
///
/// Variants are grouped by the subsystem that raises them; the CLI maps
/// them onto exit codes (see [`Error::is_config`]).
#[derive(Debug, Error)]
pub enum Error {
    // special functions
    #[error("domain error in {function}: {detail}")]
    Domain { function: &'static str, detail: String },
    #[error("{function} did not reach the requested accuracy (partial estimate {estimate})")]
    Accuracy {
        function: &'static str,
        estimate: Complex64,
    },

    // parameters and quantization
    #[error("invalid parameter {field}: {detail}")]
    InvalidParameter { field: &'static str, detail: String },
    #[error("n = {n} does not exceed alpha = {alpha}: orbital speed would reach c")]
    Superluminal { n: f64, alpha: f64 },
    #[error("internal amplitude |z0|^2 = {z0_mod2} is negative; Omega_p must be at least {min_omega_p}")]
    UnphysicalAmplitude { z0_mod2: f64, min_omega_p: f64 },
    #[error("equal mode numbers m+ = m- = {m} carry no charge")]
    ZeroCharge { m: f64 },

    // wave field
    #[error("beta = {beta} is supercritical for l = {l} (needs beta < l + 1/2)")]
    SupercriticalCharge { l: u32, beta: f64 },
    #[error("omega = {omega} is below the field frequency omega0 = {omega0} (evanescent regime)")]
    Evanescent { omega: f64, omega0: f64 },
    #[error("P_{l}^{m}(0) vanishes because l + m is odd; the mode cannot be matched on the orbit")]
    UnmatchedParity { l: u32, m: i64 },
    #[error("radial function has a node on the orbit (|R(r_n)| = {value:e})")]
    NodeOnOrbit { value: f64 },
    #[error("mode number {value} is not an integer (distance {residual:e})")]
    NonIntegerMode { value: f64, residual: f64 },
    #[error("field modulus {modulus:e} is too small for a quantum potential")]
    UndefinedPotential { modulus: f64 },

    // dynamics
    #[error("particle reached r = {r:e}, below the singularity cutoff {cutoff:e}")]
    Singularity { r: f64, cutoff: f64 },
    #[error("integration failed at t = {t}: {reason}")]
    IntegrationFailure {
        t: f64,
        reason: String,
        partial: Box<Vec<TrajectoryState>>,
    },
    #[error("guidance denominator vanishes at the requested point ({denominator:e})")]
    GuidanceSingularity { denominator: f64 },
    #[error("usage error: {0}")]
    Usage(String),

    // configuration
    #[error("config error at `{path}`: {detail}")]
    Config { path: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }

    pub(crate) fn param(field: &'static str, detail: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            detail: detail.into(),
        }
    }

    /// True for errors caused by the caller's configuration rather than the numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::InvalidParameter { .. } | Error::Usage(_)
        )
    }
}
