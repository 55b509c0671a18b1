use num_complex::Complex64;
use serde::Serialize;

use super::ode::{dopri5, Options};
use crate::error::{Error, Result};
use crate::quantization::OrbitSolution;

/// One sample of an integrated trajectory.
///
/// `action` is the accumulated ∫P·dx; `z_phase` is Ω_p τ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryState {
    pub t: f64,
    pub pos: [f64; 3],
    pub vel: [f64; 3],
    pub tau: f64,
    pub z_phase: f64,
    pub action: f64,
}

impl TrajectoryState {
    pub fn radius(&self) -> f64 {
        norm(&self.pos)
    }

    pub fn speed(&self) -> f64 {
        norm(&self.vel)
    }

    /// Lorentz factor 1/√(1 − |v|²).
    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - dot(&self.vel, &self.vel)).sqrt()
    }

    /// Azimuth of the position in the x–y plane.
    pub fn azimuth(&self) -> f64 {
        self.pos[1].atan2(self.pos[0])
    }
}

/// Constants of the particle motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MotionParams {
    /// Coulomb coupling; the force is −α r̂/r².
    pub alpha: f64,
    pub m_eff: f64,
    /// Internal pulsation driving z_phase.
    pub omega_p: f64,
    /// Radius below which the potential is treated as singular.
    pub cutoff: f64,
}

impl MotionParams {
    /// Constants of a quantized orbit, cutoff 10⁻⁶ a₀.
    pub fn from_orbit(orbit: &OrbitSolution) -> Self {
        MotionParams {
            alpha: orbit.alpha,
            m_eff: orbit.m_eff,
            omega_p: orbit.omega_p,
            cutoff: 1e-6 * orbit.a0,
        }
    }

    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_omega_p(mut self, omega_p: f64) -> Self {
        self.omega_p = omega_p;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.m_eff > 0.0 && self.m_eff.is_finite()) {
            return Err(Error::param("m_eff", format!("need m_eff > 0, got {}", self.m_eff)));
        }
        if !(self.alpha.is_finite() && self.omega_p.is_finite()) {
            return Err(Error::param("alpha", "alpha and omega_p must be finite"));
        }
        if !(self.cutoff >= 0.0) {
            return Err(Error::param("cutoff", format!("need cutoff >= 0, got {}", self.cutoff)));
        }
        Ok(())
    }
}

/// Gradient ∇u at the particle, supplied by the caller.
pub type FieldGradient<'a> = dyn Fn(&TrajectoryState) -> [Complex64; 3] + Sync + 'a;

/// The reaction field 𝒩(τ) of the general equations of motion.
///
/// When enabled, the force gains −(2/γ) Re(𝒩* ∇u). A disabled spec (or
/// 𝒩 ≡ 0) is the transparent case.
pub struct GeneralForceSpec<'a> {
    pub script_n: Box<dyn Fn(f64) -> Complex64 + Sync + 'a>,
    pub enabled: bool,
}

impl std::fmt::Debug for GeneralForceSpec<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneralForceSpec")
            .field("enabled", &self.enabled)
            .finish_non_exhaustive()
    }
}

impl<'a> GeneralForceSpec<'a> {
    pub fn transparent() -> Self {
        GeneralForceSpec {
            script_n: Box::new(|_| Complex64::new(0.0, 0.0)),
            enabled: false,
        }
    }

    pub fn new(script_n: impl Fn(f64) -> Complex64 + Sync + 'a) -> Self {
        GeneralForceSpec {
            script_n: Box::new(script_n),
            enabled: true,
        }
    }
}

/// m_p(1 + σΩ_p²|z₀|²).
pub fn effective_mass(m_p: f64, sigma: f64, omega_p: f64, z0_mod: f64) -> Result<f64> {
    if !(m_p > 0.0 && m_p.is_finite()) {
        return Err(Error::param("m_p", format!("need m_p > 0, got {m_p}")));
    }
    for (field, v) in [("sigma", sigma), ("omega_p", omega_p), ("z0_mod", z0_mod)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::param(field, format!("need a finite value >= 0, got {v}")));
        }
    }
    Ok(m_p * (1.0 + sigma * omega_p * omega_p * z0_mod * z0_mod))
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: &[f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Lab-time force d(m γ v)/dt.
fn force(
    motion: &MotionParams,
    state: &TrajectoryState,
    gamma: f64,
    extra: &GeneralForceSpec,
    gradient: Option<&FieldGradient>,
) -> Result<[f64; 3]> {
    let r = state.radius();
    if !(r >= motion.cutoff) || r == 0.0 {
        return Err(Error::Singularity {
            r,
            cutoff: motion.cutoff,
        });
    }
    let k = -motion.alpha / (r * r * r);
    let mut f = [k * state.pos[0], k * state.pos[1], k * state.pos[2]];
    if extra.enabled {
        let grad = gradient.ok_or_else(|| Error::Usage("an enabled reaction force needs a field gradient".into()))?;
        let nn = (extra.script_n)(state.tau).conj();
        let g = grad(state);
        for i in 0..3 {
            f[i] += -2.0 / gamma * (nn * g[i]).re;
        }
    }
    Ok(f)
}

/// Lab-time acceleration dv/dt of the particle.
///
/// From d(m γ v)/dt = F: dv/dt = (F − v (v·F))/(m γ).
pub fn coulomb_acceleration(
    motion: &MotionParams,
    state: &TrajectoryState,
    extra: &GeneralForceSpec,
    gradient: Option<&FieldGradient>,
) -> Result<[f64; 3]> {
    let gamma = state.gamma();
    if !gamma.is_finite() {
        return Err(Error::param("vel", "speed must be below 1"));
    }
    let f = force(motion, state, gamma, extra, gradient)?;
    let vf = dot(&state.vel, &f);
    let mg = motion.m_eff * gamma;
    Ok([
        (f[0] - state.vel[0] * vf) / mg,
        (f[1] - state.vel[1] * vf) / mg,
        (f[2] - state.vel[2] * vf) / mg,
    ])
}

/// Particle at (rₙ, 0, 0) moving with (0, vₙ, 0), all clocks at zero.
pub fn circular_initials(orbit: &OrbitSolution) -> TrajectoryState {
    TrajectoryState {
        t: 0.0,
        pos: [orbit.r, 0.0, 0.0],
        vel: [0.0, orbit.v, 0.0],
        tau: 0.0,
        z_phase: 0.0,
        action: 0.0,
    }
}

/// Controls for [`integrate_orbit_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrationOptions {
    /// Relative and absolute local error per step.
    pub tol: f64,
    pub max_steps: usize,
    /// Emit samples every `sample_dt` of lab time (via dense output)
    /// instead of at every accepted step.
    pub sample_dt: Option<f64>,
}

impl IntegrationOptions {
    pub fn new(tol: f64) -> Self {
        IntegrationOptions {
            tol,
            max_steps: 20_000_000,
            sample_dt: None,
        }
    }

    pub fn sampled(mut self, dt: f64) -> Self {
        self.sample_dt = Some(dt);
        self
    }
}

// packed state: x(3), w = γv (3), τ, z_phase, action
const DIM: usize = 9;

fn pack(s: &TrajectoryState) -> [f64; DIM] {
    let g = s.gamma();
    [
        s.pos[0],
        s.pos[1],
        s.pos[2],
        g * s.vel[0],
        g * s.vel[1],
        g * s.vel[2],
        s.tau,
        s.z_phase,
        s.action,
    ]
}

fn unpack(t: f64, y: &[f64; DIM]) -> (TrajectoryState, f64) {
    let w = [y[3], y[4], y[5]];
    let gamma = (1.0 + dot(&w, &w)).sqrt();
    (
        TrajectoryState {
            t,
            pos: [y[0], y[1], y[2]],
            vel: [w[0] / gamma, w[1] / gamma, w[2] / gamma],
            tau: y[6],
            z_phase: y[7],
            action: y[8],
        },
        gamma,
    )
}

/// Integrate the Coulomb motion for `duration` of lab time (negative runs
/// backwards) with per-step local error below `tol`.
pub fn integrate_orbit(
    motion: &MotionParams,
    initial: &TrajectoryState,
    duration: f64,
    tol: f64,
) -> Result<Vec<TrajectoryState>> {
    integrate_orbit_with(
        motion,
        &GeneralForceSpec::transparent(),
        None,
        initial,
        duration,
        &IntegrationOptions::new(tol),
    )
}

/// [`integrate_orbit`] with the reaction-force hook and output options.
///
/// On failure the error carries every state produced so far.
pub fn integrate_orbit_with(
    motion: &MotionParams,
    extra: &GeneralForceSpec,
    gradient: Option<&FieldGradient>,
    initial: &TrajectoryState,
    duration: f64,
    opts: &IntegrationOptions,
) -> Result<Vec<TrajectoryState>> {
    motion.validate()?;
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::param("tol", format!("need tol > 0, got {}", opts.tol)));
    }
    if !duration.is_finite() {
        return Err(Error::param("duration", "must be finite"));
    }
    if !(initial.speed() < 1.0) {
        return Err(Error::param(
            "vel",
            format!("initial speed {} is not below 1", initial.speed()),
        ));
    }
    if let Some(dt) = opts.sample_dt {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param("sample_dt", format!("need sample_dt > 0, got {dt}")));
        }
    }
    // the state error is reported through the step callback
    force(motion, initial, initial.gamma(), extra, gradient)?;

    let m = motion.m_eff;
    let rhs = |t: f64, y: &[f64; DIM]| -> Result<[f64; DIM]> {
        let (s, gamma) = unpack(t, y);
        let f = force(motion, &s, gamma, extra, gradient)?;
        let v = s.vel;
        Ok([
            v[0],
            v[1],
            v[2],
            f[0] / m,
            f[1] / m,
            f[2] / m,
            1.0 / gamma,
            motion.omega_p / gamma,
            m * gamma * dot(&v, &v),
        ])
    };

    let t0 = initial.t;
    let t_end = t0 + duration;
    let dir = if duration >= 0.0 { 1.0 } else { -1.0 };
    let mut out = vec![*initial];
    let mut next_sample = 1usize;
    let result = dopri5(
        rhs,
        t0,
        pack(initial),
        t_end,
        &Options {
            tol: opts.tol,
            max_steps: opts.max_steps,
        },
        |dense, t1, y1| match opts.sample_dt {
            None => out.push(unpack(t1, y1).0),
            Some(dt) => {
                loop {
                    let ts = t0 + dir * dt * next_sample as f64;
                    if (ts - t1) * dir > 0.0 || (ts - t_end) * dir > 0.0 {
                        break;
                    }
                    out.push(unpack(ts, &dense.eval(ts)).0);
                    next_sample += 1;
                }
                if t1 == t_end && out.last().map(|s| s.t) != Some(t_end) {
                    out.push(unpack(t1, y1).0);
                }
            }
        },
    );
    match result {
        Ok(()) => Ok(out),
        Err(f) => Err(Error::IntegrationFailure {
            t: f.t,
            reason: f.reason,
            partial: Box::new(out),
        }),
    }
}
