use serde::Serialize;

use super::params::PhysicalParams;
use crate::error::{Error, Result};

/// Default absolute tolerance for integer detection of mode numbers.
pub const DEFAULT_INTEGER_TOL: f64 = 1e-9;

/// Every quantized quantity of the circular orbit with azimuthal number n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitSolution {
    pub n: f64,
    /// N = n²/α.
    #[serde(rename = "N")]
    pub big_n: f64,
    pub m_plus: f64,
    pub m_minus: f64,
    /// Orbital speed in units of c.
    pub v: f64,
    /// Orbit radius.
    pub r: f64,
    /// Linear momentum.
    #[serde(rename = "P")]
    pub p: f64,
    /// Total energy (rest energy included, potential excluded).
    #[serde(rename = "E")]
    pub e: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    /// Potential shift with bε = α/r.
    pub epsilon: f64,
    /// Internal pulsation required by phase harmony.
    #[serde(rename = "Omega_p")]
    pub omega_p: f64,
    pub z0_mod2: Option<f64>,
    pub selection_ok: bool,
    pub selection_residual: f64,
    pub alpha: f64,
    pub b: f64,
    pub beta: f64,
    pub omega0: f64,
    pub m_eff: f64,
    /// Bohr radius a₀ = 1/(m_eff α).
    pub a0: f64,
}

impl OrbitSolution {
    /// √(1 − α²/n²) = √(1 − v²).
    pub fn inverse_gamma(&self) -> f64 {
        (1.0 - self.v * self.v).sqrt()
    }

    /// Lorentz factor of the orbital motion.
    pub fn gamma(&self) -> f64 {
        1.0 / self.inverse_gamma()
    }

    /// Lab-time period of one revolution.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.r / self.v
    }

    /// Particle Lagrangian on the orbit, −m_eff√(1−v²) + α/r.
    pub fn lagrangian(&self) -> f64 {
        -self.m_eff * self.inverse_gamma() + self.alpha / self.r
    }
}

/// m± with b·m± = n²/α ± n.
pub fn mode_numbers(params: &PhysicalParams, n: f64) -> (f64, f64) {
    let big_n = n * n / params.alpha;
    ((big_n + n) / params.b, (big_n - n) / params.b)
}

/// Mode numbers for the ξ-perturbed rule written in ñ = (m₊ − m₋)/2:
/// m± = bñ²/α ± ñ, which is the same pair as [`mode_numbers`] at n = bñ.
pub fn mode_numbers_tilde(params: &PhysicalParams, n_tilde: f64) -> (f64, f64) {
    let q = params.b / params.alpha;
    (q * n_tilde * n_tilde + n_tilde, q * n_tilde * n_tilde - n_tilde)
}

/// Outcome of an integrality test on the mode numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelectionCheck {
    pub ok: bool,
    /// Largest distance of m± to the nearest integer.
    pub residual: f64,
}

fn integrality(m_plus: f64, m_minus: f64, tol: f64) -> SelectionCheck {
    let d = |x: f64| (x - x.round()).abs();
    let residual = d(m_plus).max(d(m_minus));
    SelectionCheck {
        ok: residual <= tol,
        residual,
    }
}

/// Both m± within `tol` of integers.
pub fn check_selection_rule(params: &PhysicalParams, n: f64, tol: f64) -> Result<SelectionCheck> {
    if !(tol >= 0.0) {
        return Err(Error::param("tol", format!("need tol >= 0, got {tol}")));
    }
    let (mp, mm) = mode_numbers(params, n);
    Ok(integrality(mp, mm, tol))
}

/// Selection rule in terms of ñ (see [`mode_numbers_tilde`]).
pub fn check_selection_rule_tilde(params: &PhysicalParams, n_tilde: f64, tol: f64) -> Result<SelectionCheck> {
    if !(tol >= 0.0) {
        return Err(Error::param("tol", format!("need tol >= 0, got {tol}")));
    }
    let (mp, mm) = mode_numbers_tilde(params, n_tilde);
    Ok(integrality(mp, mm, tol))
}

/// α = (b/2)(m₊ − m₋)²/(m₊ + m₋).
pub fn fine_structure_from_modes(m_plus: f64, m_minus: f64, b: f64) -> Result<f64> {
    if m_plus == m_minus {
        return Err(Error::ZeroCharge { m: m_plus });
    }
    if !(m_minus >= 0.0 && m_plus > m_minus) {
        return Err(Error::param(
            "m_plus",
            format!("need m_plus > m_minus >= 0, got ({m_plus}, {m_minus})"),
        ));
    }
    let d = m_plus - m_minus;
    Ok(0.5 * b * d * d / (m_plus + m_minus))
}

/// Solve the circular orbit with azimuthal number `n`.
pub fn solve_orbit(params: &PhysicalParams, n: f64) -> Result<OrbitSolution> {
    params.validate()?;
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::param("n", format!("need a positive finite n, got {n}")));
    }
    let alpha = params.alpha;
    let b = params.b;
    if n <= alpha {
        return Err(Error::Superluminal { n, alpha });
    }
    let (m_eff, z0_mod2) = params.effective_mass(n)?;

    let x = alpha / n;
    let s = (1.0 - x * x).sqrt();
    let big_n = n * n / alpha;
    let (m_plus, m_minus) = mode_numbers(params, n);
    let a0 = 1.0 / (m_eff * alpha);
    let r = n * n * a0 * s;
    let v = x;
    let p = m_eff * v / s;
    let e = m_eff * s;
    let omega_plus = m_eff / s * (1.0 + x - x * x) / b;
    let omega_minus = m_eff / s * (1.0 - x - x * x) / b;
    let omega_p = match params.mass {
        super::params::MassSpec::Effective { .. } => m_eff * params.harmony_factor(n) / b,
        super::params::MassSpec::Bare { omega_p, .. } => omega_p,
    };
    let sel = integrality(m_plus, m_minus, DEFAULT_INTEGER_TOL);

    Ok(OrbitSolution {
        n,
        big_n,
        m_plus,
        m_minus,
        v,
        r,
        p,
        e,
        omega_plus,
        omega_minus,
        k_plus: m_plus / r,
        k_minus: m_minus / r,
        epsilon: alpha / (b * r),
        omega_p,
        z0_mod2,
        selection_ok: sel.ok,
        selection_residual: sel.residual,
        alpha,
        b,
        beta: params.beta(),
        omega0: params.omega0,
        m_eff,
        a0,
    })
}

/// Bohr energy m_eff − m_eff α²/(2n²).
pub fn nonrel_energy(params: &PhysicalParams, n: f64) -> Result<f64> {
    if !(n > 0.0) {
        return Err(Error::param("n", format!("need n > 0, got {n}")));
    }
    let (m_eff, _) = params.effective_mass(n)?;
    Ok(m_eff - m_eff * params.alpha * params.alpha / (2.0 * n * n))
}

/// The phase-wave argument for a particle circulating on a closed loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistoricalPhaseWave {
    /// Phase velocity 1/v_e.
    pub v_phi: f64,
    /// Time for the phase wave to lap the particle once.
    pub delta_t: f64,
    /// Internal clock phase accumulated over `delta_t`, in units of 2π.
    pub action_over_h: f64,
}

/// Phase velocity, catch-up time and clock phase for speed `v_e` on a loop of
/// length `orbit_length` with rest mass `m_e`.
pub fn historical_phase_wave(v_e: f64, orbit_length: f64, m_e: f64) -> Result<HistoricalPhaseWave> {
    if !(v_e > 0.0 && v_e < 1.0) {
        return Err(Error::param("v_e", format!("need 0 < v_e < 1, got {v_e}")));
    }
    let v_phi = 1.0 / v_e;
    let delta_t = orbit_length / (v_phi - v_e);
    // moving clock ω′ = m_e √(1 − v²)
    let omega_clock = m_e * (1.0 - v_e * v_e).sqrt();
    Ok(HistoricalPhaseWave {
        v_phi,
        delta_t,
        action_over_h: omega_clock * delta_t / (2.0 * std::f64::consts::PI),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_row_n1() {
        let p = PhysicalParams::hydrogen();
        let o = solve_orbit(&p, 1.0).unwrap();
        assert!((o.m_plus - 138.0).abs() < 1e-9);
        assert!((o.m_minus - 136.0).abs() < 1e-9);
        assert!((o.v - 1.0 / 137.0).abs() < 1e-18);
        assert!(o.selection_ok);
    }

    #[test]
    fn superluminal_rejected() {
        let p = PhysicalParams::new(0.5, 1.0).unwrap();
        assert!(matches!(solve_orbit(&p, 0.5), Err(Error::Superluminal { .. })));
    }

    #[test]
    fn omega_forms_agree() {
        let p = PhysicalParams::new(1.0 / 3.0, 1.0).unwrap();
        for n in [1.0, 2.0, 3.0, 7.5] {
            let o = solve_orbit(&p, n).unwrap();
            let wp = (o.big_n + n - o.alpha) / (o.b * o.r);
            let wm = (o.big_n - n - o.alpha) / (o.b * o.r);
            assert!((wp - o.omega_plus).abs() < 1e-13 * wp);
            assert!((wm - o.omega_minus).abs() < 1e-13 * wm);
        }
    }

    #[test]
    fn fine_structure_rejects_degenerate() {
        assert!(matches!(
            fine_structure_from_modes(5.0, 5.0, 1.0),
            Err(Error::ZeroCharge { .. })
        ));
        assert!(fine_structure_from_modes(4.0, 5.0, 1.0).is_err());
        let a = fine_structure_from_modes(138.0, 136.0, 1.0).unwrap();
        assert!((a - 1.0 / 137.0).abs() < 1e-17);
    }

    #[test]
    fn historical_identities() {
        let h = historical_phase_wave(0.3, 2.0, 1.0).unwrap();
        assert!((h.v_phi * 0.3 - 1.0).abs() < 1e-15);
        assert!((h.delta_t * (h.v_phi - 0.3) - 2.0).abs() < 1e-15);
        assert!(historical_phase_wave(1.0, 1.0, 1.0).is_err());
    }
}
