use num_complex::Complex64;
use serde::Serialize;

use super::motion::{cross, norm, MotionParams, TrajectoryState};
use crate::error::{Error, Result};
use crate::quantization::OrbitSolution;
use std::f64::consts::PI;

use crate::wavefield::{field_on_orbit, FieldSample, SpacetimePoint};

/// E = m γ − α/r.
pub fn energy(motion: &MotionParams, s: &TrajectoryState) -> f64 {
    motion.m_eff * s.gamma() - motion.alpha / s.radius()
}

/// L = m γ |r × v|.
pub fn angular_momentum(motion: &MotionParams, s: &TrajectoryState) -> f64 {
    motion.m_eff * s.gamma() * norm(&cross(&s.pos, &s.vel))
}

/// Worst relative departures from the initial radius, energy and angular
/// momentum along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationReport {
    pub radius_deviation: f64,
    pub energy_drift: f64,
    pub angular_momentum_drift: f64,
}

pub fn conservation_report(motion: &MotionParams, trajectory: &[TrajectoryState]) -> Result<ConservationReport> {
    let first = trajectory
        .first()
        .ok_or_else(|| Error::Usage("empty trajectory".into()))?;
    let (r0, e0, l0) = (first.radius(), energy(motion, first), angular_momentum(motion, first));
    let rel = |a: f64, b: f64| if b == 0.0 { a.abs() } else { (a - b).abs() / b.abs() };
    let mut rep = ConservationReport {
        radius_deviation: 0.0,
        energy_drift: 0.0,
        angular_momentum_drift: 0.0,
    };
    for s in trajectory {
        rep.radius_deviation = rep.radius_deviation.max(rel(s.radius(), r0));
        rep.energy_drift = rep.energy_drift.max(rel(energy(motion, s), e0));
        rep.angular_momentum_drift = rep.angular_momentum_drift.max(rel(angular_momentum(motion, s), l0));
    }
    Ok(rep)
}

/// Largest mismatch between the internal oscillator z = z₀e^{−iΩ_p τ} and
/// the on-orbit field at the particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstraintResidual {
    /// max |z − u|.
    pub max_abs: f64,
    /// max |arg z − arg u| (wrapped to (−π, π]).
    pub max_phase: f64,
}

fn check_start(trajectory: &[TrajectoryState], orbit: &OrbitSolution) -> Result<()> {
    let first = trajectory
        .first()
        .ok_or_else(|| Error::Usage("empty trajectory".into()))?;
    if (first.radius() - orbit.r).abs() > 1e-6 * orbit.r {
        return Err(Error::Usage(format!(
            "trajectory starts at r = {}, not on the orbit r_n = {}",
            first.radius(),
            orbit.r
        )));
    }
    Ok(())
}

/// (t, z, u) along the trajectory, with the azimuth unwrapped so that
/// non-integer n/b stays continuous.
fn constraint_pairs(
    trajectory: &[TrajectoryState],
    orbit: &OrbitSolution,
    u0: f64,
) -> Vec<(f64, Complex64, FieldSample)> {
    let mut phi = trajectory[0].azimuth();
    let mut prev = phi;
    trajectory
        .iter()
        .map(|s| {
            let a = s.azimuth();
            phi += crate::specfun::wrap_angle(a - prev);
            prev = a;
            let z = Complex64::from_polar(u0, -s.z_phase);
            (s.t, z, field_on_orbit(orbit, u0, s.t, phi))
        })
        .collect()
}

/// Compare z(τ) with u(t, x_p(t)) along a trajectory started on `orbit`,
/// with z₀ = u₀ and the phase Ω_p τ integrated as `z_phase`.
pub fn constraint_residual(
    trajectory: &[TrajectoryState],
    orbit: &OrbitSolution,
    u0: f64,
) -> Result<ConstraintResidual> {
    check_start(trajectory, orbit)?;
    let mut out = ConstraintResidual {
        max_abs: 0.0,
        max_phase: 0.0,
    };
    for (_, z, sample) in constraint_pairs(trajectory, orbit, u0) {
        let u = sample.value;
        out.max_abs = out.max_abs.max((z - u).norm());
        out.max_phase = out.max_phase.max((z / u).arg().abs());
    }
    Ok(out)
}

/// Least-squares slope of the phase mismatch arg(z/u) against lab time.
/// Zero under phase harmony; −(κ − 1) Ω_p √(1 − v²) when Ω_p is scaled by κ.
///
/// Both phases are taken unwrapped (the integrated clock phase and the
/// carrier phase at the unwrapped azimuth), so the slope is meaningful at any
/// sampling rate; a negative envelope adds a constant π.
pub fn phase_drift_rate(trajectory: &[TrajectoryState], orbit: &OrbitSolution, u0: f64) -> Result<f64> {
    check_start(trajectory, orbit)?;
    if trajectory.len() < 2 {
        return Err(Error::Usage("need at least two samples for a drift rate".into()));
    }
    let series: Vec<(f64, f64)> = constraint_pairs(trajectory, orbit, u0)
        .into_iter()
        .zip(trajectory)
        .map(|((t, _, u), st)| {
            let sign = if u.envelope < 0.0 { PI } else { 0.0 };
            (t, -st.z_phase - u.carrier_phase - sign)
        })
        .collect();
    let n = series.len() as f64;
    let mt = series.iter().map(|p| p.0).sum::<f64>() / n;
    let my = series.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = series.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
    let sxx: f64 = series.iter().map(|p| (p.0 - mt).powi(2)).sum();
    Ok(sxy / sxx)
}

fn azimuthal(phi: f64, speed: f64) -> [f64; 3] {
    [-speed * phi.sin(), speed * phi.cos(), 0.0]
}

/// Guidance velocity v = −∇S/(∂_t S + eV) with S = b × (carrier phase of
/// the on-orbit field) and −eV = α/r.
///
/// S = nφ − (N − α)t/rₙ depends on φ only, so the velocity is azimuthal:
/// v = (n/(r sin θ)) / ((N − α)/rₙ + α/r).
pub fn bohmian_velocity(orbit: &OrbitSolution, point: SpacetimePoint) -> Result<[f64; 3]> {
    let SpacetimePoint { r, theta, phi, .. } = point;
    let rho = r * theta.sin();
    if !(rho > 0.0) {
        return Err(Error::domain("bohmian_velocity", "point on the polar axis"));
    }
    let grad_phi = orbit.n / rho;
    let dt_s = -(orbit.big_n - orbit.alpha) / orbit.r;
    let denom = dt_s - orbit.alpha / r;
    if denom.abs() < 1e-300 {
        return Err(Error::GuidanceSingularity { denominator: denom });
    }
    Ok(azimuthal(phi, -grad_phi / denom))
}

/// Guidance velocity of an arbitrary field with phase S = b·arg u, by
/// central differences of step h (time and arc length).
pub fn bohmian_velocity_fd<F>(field: F, b: f64, alpha: f64, point: SpacetimePoint, h: f64) -> Result<[f64; 3]>
where
    F: Fn(f64, f64, f64, f64) -> Result<Complex64>,
{
    let SpacetimePoint { t, r, theta, phi } = point;
    let s = theta.sin();
    if !(h > 0.0 && r > h && r * s > h) {
        return Err(Error::param("h", format!("step {h} too large for the point")));
    }
    let u0 = field(t, r, theta, phi)?;
    // phase differences relative to the centre avoid branch cuts
    let dphase = |a: Complex64, c: Complex64| b * crate::specfun::wrap_angle(a.arg() - c.arg());
    let ds = |p: Complex64, m: Complex64| (dphase(p, u0) - dphase(m, u0)) / (2.0 * h);
    let st = ds(field(t + h, r, theta, phi)?, field(t - h, r, theta, phi)?);
    let sr = ds(field(t, r + h, theta, phi)?, field(t, r - h, theta, phi)?);
    let dth = h / r;
    let sth = ds(field(t, r, theta + dth, phi)?, field(t, r, theta - dth, phi)?);
    let dph = h / (r * s);
    let sph = ds(field(t, r, theta, phi + dph)?, field(t, r, theta, phi - dph)?);
    let denom = st - alpha / r;
    if !(denom.abs() > 1e-12 * (st.abs() + alpha / r)) {
        return Err(Error::GuidanceSingularity { denominator: denom });
    }
    // spherical → Cartesian
    let (ct, cp, sp) = (theta.cos(), phi.cos(), phi.sin());
    let g = [
        sr * s * cp + sth * ct * cp - sph * sp,
        sr * s * sp + sth * ct * sp + sph * cp,
        sr * ct - sth * s,
    ];
    Ok([-g[0] / denom, -g[1] / denom, -g[2] / denom])
}
