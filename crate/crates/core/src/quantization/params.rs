use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Golden-ratio bound on α above which ω₋ turns negative at n = 1.
pub const POSITIVE_FREQUENCY_ALPHA_BOUND: f64 = 0.618_033_988_749_894_9;

/// How the effective mass is specified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MassSpec {
    /// m_eff given directly.
    Effective { m_eff: f64 },
    /// Bare particle constants; m_eff and |z₀|² follow from the phase-harmony
    /// condition for each n.
    Bare { m_p: f64, sigma: f64, omega_p: f64 },
}

impl Default for MassSpec {
    fn default() -> Self {
        MassSpec::Effective { m_eff: 1.0 }
    }
}

/// Model constants in natural units (c = ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalParams {
    /// Fine-structure constant α.
    pub alpha: f64,
    /// Phase-scaling constant b (P = b k, E = b ω).
    pub b: f64,
    /// Field charge ratio ξ = e′/e, so β = ξα.
    pub xi_charge: f64,
    /// Field Compton frequency ω₀ (Klein–Gordon regime when positive).
    #[serde(default)]
    pub omega0: f64,
    #[serde(default)]
    pub mass: MassSpec,
    /// Reject α at or above the bound where ω₋ stops being positive.
    #[serde(default = "default_true")]
    pub require_positive_frequencies: bool,
}

fn default_true() -> bool {
    true
}

impl PhysicalParams {
    /// α and b with ξ = 1/b (so bβ = α), ω₀ = 0 and m_eff = 1.
    pub fn new(alpha: f64, b: f64) -> Result<Self> {
        let p = Self {
            alpha,
            b,
            xi_charge: 1.0 / b,
            omega0: 0.0,
            mass: MassSpec::default(),
            require_positive_frequencies: true,
        };
        p.validate()?;
        Ok(p)
    }

    /// α = 1/137, b = 1.
    pub fn hydrogen() -> Self {
        Self::new(1.0 / 137.0, 1.0).expect("valid constants")
    }

    pub fn with_xi_charge(mut self, xi: f64) -> Self {
        self.xi_charge = xi;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.xi_charge = beta / self.alpha;
        self
    }

    pub fn with_omega0(mut self, omega0: f64) -> Self {
        self.omega0 = omega0;
        self
    }

    pub fn with_mass(mut self, mass: MassSpec) -> Self {
        self.mass = mass;
        self
    }

    pub fn allow_negative_frequencies(mut self) -> Self {
        self.require_positive_frequencies = false;
        self
    }

    /// β = ξα.
    pub fn beta(&self) -> f64 {
        self.xi_charge * self.alpha
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |field: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(field, format!("must be finite, got {v}")))
            }
        };
        finite("alpha", self.alpha)?;
        finite("b", self.b)?;
        finite("xi_charge", self.xi_charge)?;
        finite("omega0", self.omega0)?;
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::param("alpha", format!("need 0 < alpha < 1, got {}", self.alpha)));
        }
        if self.require_positive_frequencies && self.alpha >= POSITIVE_FREQUENCY_ALPHA_BOUND {
            return Err(Error::param(
                "alpha",
                format!(
                    "alpha = {} is not below (sqrt(5) - 1)/2 = {POSITIVE_FREQUENCY_ALPHA_BOUND}; \
                     omega_- would not be positive",
                    self.alpha
                ),
            ));
        }
        if self.b <= 0.0 {
            return Err(Error::param("b", format!("need b > 0, got {}", self.b)));
        }
        if self.omega0 < 0.0 {
            return Err(Error::param("omega0", format!("need omega0 >= 0, got {}", self.omega0)));
        }
        match self.mass {
            MassSpec::Effective { m_eff } => {
                if !(m_eff > 0.0 && m_eff.is_finite()) {
                    return Err(Error::param("mass.m_eff", format!("need m_eff > 0, got {m_eff}")));
                }
            }
            MassSpec::Bare { m_p, sigma, omega_p } => {
                if !(m_p > 0.0 && m_p.is_finite()) {
                    return Err(Error::param("mass.m_p", format!("need m_p > 0, got {m_p}")));
                }
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return Err(Error::param("mass.sigma", format!("need sigma > 0, got {sigma}")));
                }
                if !(omega_p > 0.0 && omega_p.is_finite()) {
                    return Err(Error::param("mass.omega_p", format!("need omega_p > 0, got {omega_p}")));
                }
            }
        }
        Ok(())
    }

    /// The factor 1 − α²/(n² − α²) relating bΩ_p to m_eff.
    pub(crate) fn harmony_factor(&self, n: f64) -> f64 {
        let a2 = self.alpha * self.alpha;
        1.0 - a2 / (n * n - a2)
    }

    /// Effective mass for orbit n, with |z₀|² when bare constants are given.
    pub fn effective_mass(&self, n: f64) -> Result<(f64, Option<f64>)> {
        match self.mass {
            MassSpec::Effective { m_eff } => Ok((m_eff, None)),
            MassSpec::Bare { m_p, sigma, omega_p } => {
                let h = self.harmony_factor(n);
                let min_omega_p = m_p * h / self.b;
                if h <= 0.0 {
                    return Err(Error::param(
                        "n",
                        format!("1 - alpha^2/(n^2 - alpha^2) = {h} is not positive for n = {n}"),
                    ));
                }
                let m_eff = self.b * omega_p / h;
                let z0_mod2 = (m_eff - m_p) / (m_p * sigma * omega_p * omega_p);
                if z0_mod2 < 0.0 {
                    return Err(Error::UnphysicalAmplitude { z0_mod2, min_omega_p });
                }
                Ok((m_eff, Some(z0_mod2)))
            }
        }
    }
}
