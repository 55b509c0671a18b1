//! Finite-difference checks of the field equations.
//!
//! Derivatives are central differences with arc-length step `h` in each
//! spherical direction (dr = h, dθ = h/r, dφ = h/(r sin θ)), so the
//! truncation error is O(h²) for all of them.

use num_complex::Complex64;

use super::matching::{MatchedPair, SpacetimePoint};
use super::mode::{eval_mode, radial, Mode, RadialRatio};
use crate::error::{Error, Result};
use crate::quantization::OrbitSolution;
use crate::specfun::legendre_scaled;

fn check_step(h: f64, r: f64, theta: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::param("h", format!("need h > 0, got {h}")));
    }
    if !(r > h) {
        return Err(Error::domain(
            "finite difference",
            format!("r = {r} must exceed the step h = {h}"),
        ));
    }
    let s = theta.sin();
    if !(s * r > h) {
        return Err(Error::domain(
            "finite difference",
            format!("theta = {theta} is within one step of the polar axis"),
        ));
    }
    Ok(())
}

/// Spherical Laplacian of `g` at (r, θ, φ) by central differences.
pub fn laplacian<F>(g: F, r: f64, theta: f64, phi: f64, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64, f64) -> Result<Complex64>,
{
    check_step(h, r, theta)?;
    let s = theta.sin();
    let dth = h / r;
    let dph = h / (r * s);
    let g0 = g(r, theta, phi)?;
    let grp = g(r + h, theta, phi)?;
    let grm = g(r - h, theta, phi)?;
    let gtp = g(r, theta + dth, phi)?;
    let gtm = g(r, theta - dth, phi)?;
    let gpp = g(r, theta, phi + dph)?;
    let gpm = g(r, theta, phi - dph)?;
    let h2 = h * h;
    let radial_part = (grp - 2.0 * g0 + grm) / h2 + (grp - grm) / (h * r);
    // (1/r²)(g_θθ + cot θ g_θ), with dθ = h/r
    let polar_part = (gtp - 2.0 * g0 + gtm) / h2 + theta.cos() / s * (gtp - gtm) / (2.0 * h * r);
    let azimuthal_part = (gpp - 2.0 * g0 + gpm) / h2;
    Ok(radial_part + polar_part + azimuthal_part)
}

/// Quantum potential Q = □f/f = −∇²f/f of the static modulus f = |u| of a
/// single mode, by finite differences.
///
/// Q does not depend on the scale of f, so f is normalised to 1 at the
/// evaluation point; this keeps orders whose amplitude underflows usable.
pub fn quantum_potential(mode: &Mode, r: f64, theta: f64, phi: f64, h: f64) -> Result<f64> {
    check_step(h, r, theta)?;
    let radial = RadialRatio::new(mode, r)?;
    let ang0 = legendre_scaled(mode.l, mode.m, theta.cos());
    if ang0 == 0.0 {
        return Err(Error::UndefinedPotential { modulus: 0.0 });
    }
    let f = |r: f64, th: f64, _ph: f64| -> Result<Complex64> {
        let a = legendre_scaled(mode.l, mode.m, th.cos()) / ang0;
        Ok(Complex64::new((radial.at(r)?.norm() * a).abs(), 0.0))
    };
    // a node at r shows up as a huge neighbour ratio
    let scale = f(r + h, theta, phi)?.re.max(f(r - h, theta, phi)?.re);
    if !(scale < 1e10) {
        return Err(Error::UndefinedPotential { modulus: 1.0 / scale });
    }
    let lap = laplacian(f, r, theta, phi, h)?;
    Ok(-lap.re)
}

/// The value the quantum potential must take for an exact mode:
/// (ω + β/r)² − (m/(r sin θ))² − ω₀².
pub fn quantum_potential_closed_form(mode: &Mode, r: f64, theta: f64) -> f64 {
    let w = mode.omega + mode.beta() / r;
    let k = mode.m as f64 / (r * theta.sin());
    let w0 = mode.regime.omega0();
    w * w - k * k - w0 * w0
}

/// On-orbit closed form of Q± at (rₙ, π/2): ((m± + β − α/b)/rₙ)² − (m±/rₙ)² − ω₀².
/// Zero exactly when ω₀ = 0 and bβ = α.
pub fn quantum_potential_on_orbit(orbit: &OrbitSolution, m: f64) -> f64 {
    let a = (m + orbit.beta - orbit.alpha / orbit.b) / orbit.r;
    let k = m / orbit.r;
    a * a - k * k - orbit.omega0 * orbit.omega0
}

fn current(mode: &Mode, r: f64, theta: f64, phi: f64, h: f64) -> Result<[f64; 3]> {
    // J = Im(u* ∇u) = f² ∇Φ
    let u = |r, th, ph| eval_mode(mode, 0.0, r, th, ph);
    let s = theta.sin();
    let u0 = u(r, theta, phi)?;
    let dr = (u(r + h, theta, phi)? - u(r - h, theta, phi)?) / (2.0 * h);
    let dth = h / r;
    let dt = (u(r, theta + dth, phi)? - u(r, theta - dth, phi)?) / (2.0 * h);
    let dph = h / (r * s);
    let dp = (u(r, theta, phi + dph)? - u(r, theta, phi - dph)?) / (2.0 * h);
    Ok([(u0.conj() * dr).im, (u0.conj() * dt).im, (u0.conj() * dp).im])
}

/// Spatial part −∇·(f²∇Φ) of the current divergence for a single mode.
///
/// The time component ∂_t[f²(∂_tΦ + e′V)] vanishes identically because f is
/// static, so this is the whole four-divergence.
pub fn current_divergence(mode: &Mode, r: f64, theta: f64, phi: f64, h: f64) -> Result<f64> {
    check_step(2.0 * h, r, theta)?;
    let s = theta.sin();
    let dth = h / r;
    let dph = h / (r * s);
    let jr_p = current(mode, r + h, theta, phi, h)?[0];
    let jr_m = current(mode, r - h, theta, phi, h)?[0];
    let jt_p = current(mode, r, theta + dth, phi, h)?[1];
    let jt_m = current(mode, r, theta - dth, phi, h)?[1];
    let jp_p = current(mode, r, theta, phi + dph, h)?[2];
    let jp_m = current(mode, r, theta, phi - dph, h)?[2];
    let div_r = ((r + h).powi(2) * jr_p - (r - h).powi(2) * jr_m) / (2.0 * h * r * r);
    let div_t = ((theta + dth).sin() * jt_p - (theta - dth).sin() * jt_m) / (2.0 * h * s);
    let div_p = (jp_p - jp_m) / (2.0 * h);
    Ok(-(div_r + div_t + div_p))
}

/// Residual of (∂_t − iβ/r)²u − ∇²u + ω₀²u for any field u(t, r, θ, φ),
/// with time derivatives also taken by central differences (step h).
pub fn field_equation_residual<F>(field: F, point: SpacetimePoint, h: f64, beta: f64, omega0: f64) -> Result<Complex64>
where
    F: Fn(f64, f64, f64, f64) -> Result<Complex64>,
{
    let SpacetimePoint { t, r, theta, phi } = point;
    let u0 = field(t, r, theta, phi)?;
    let up = field(t + h, r, theta, phi)?;
    let um = field(t - h, r, theta, phi)?;
    let dtt = (up - 2.0 * u0 + um) / (h * h);
    let dt = (up - um) / (2.0 * h);
    let lap = laplacian(|r, th, ph| field(t, r, th, ph), r, theta, phi, h)?;
    let i = Complex64::i();
    let br = beta / r;
    Ok(dtt - 2.0 * i * br * dt - br * br * u0 - lap + omega0 * omega0 * u0)
}

/// [`field_equation_residual`] for a matched pair, with its β and ω₀.
pub fn pair_field_residual(pair: &MatchedPair, point: SpacetimePoint, h: f64) -> Result<Complex64> {
    let beta = pair.plus.beta();
    let omega0 = pair.plus.regime.omega0();
    field_equation_residual(|t, r, th, ph| pair.eval(t, r, th, ph), point, h, beta, omega0)
}

/// Relative residual of R″ + 2R′/r + [(ω+β/r)² − ω₀² − l(l+1)/r²] R at r.
pub fn radial_ode_residual(mode: &Mode, r: f64, h: f64) -> Result<f64> {
    if !(r > h && h > 0.0) {
        return Err(Error::param("h", format!("need 0 < h < r, got h = {h}, r = {r}")));
    }
    let r0 = radial(mode, r)?;
    let rp = radial(mode, r + h)?;
    let rm = radial(mode, r - h)?;
    let d2 = (rp - 2.0 * r0 + rm) / (h * h);
    let d1 = (rp - rm) / (2.0 * h);
    let w = mode.omega + mode.beta() / r;
    let w0 = mode.regime.omega0();
    let l = mode.l as f64;
    let k2 = w * w - w0 * w0 - l * (l + 1.0) / (r * r);
    let res = d2 + 2.0 * d1 / r + k2 * r0;
    let scale = (w * w + l * (l + 1.0) / (r * r)) * r0.norm().max(rp.norm()).max(rm.norm());
    Ok(res.norm() / scale)
}

/// Envelope group velocity (k − η)/(ω + ε) with k = (k₊−k₋)/2, ω = (ω₊+ω₋)/2
/// and ε ± η the two potential shifts k± − ω±.
pub fn group_velocity(orbit: &OrbitSolution) -> f64 {
    let eps_p = orbit.k_plus - orbit.omega_plus;
    let eps_m = orbit.k_minus - orbit.omega_minus;
    let k = 0.5 * (orbit.k_plus - orbit.k_minus);
    let w = 0.5 * (orbit.omega_plus + orbit.omega_minus);
    (k - 0.5 * (eps_p - eps_m)) / (w + 0.5 * (eps_p + eps_m))
}

/// Potential shifts (k₊ − ω₊, k₋ − ω₋); both equal α/(b rₙ).
pub fn dispersion_shifts(orbit: &OrbitSolution) -> (f64, f64) {
    (orbit.k_plus - orbit.omega_plus, orbit.k_minus - orbit.omega_minus)
}

/// (1/(r sin θ)) ∂_φ arg u for a single mode by central differences.
pub fn phase_gradient_wavevector(mode: &Mode, r: f64, theta: f64, phi: f64, h: f64) -> Result<f64> {
    let rs = r * theta.sin();
    let dph = h / rs;
    let up = eval_mode(mode, 0.0, r, theta, phi + dph)?;
    let um = eval_mode(mode, 0.0, r, theta, phi - dph)?;
    Ok(crate::specfun::wrap_angle(up.arg() - um.arg()) / (2.0 * dph) / rs)
}
