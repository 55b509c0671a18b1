use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::mode::{eval_mode, radial_ratio, ser_complex, Mode, RadialRatio, Regime, Sign};
use crate::error::{Error, Result};
use crate::quantization::OrbitSolution;
use crate::specfun::{kummer_m, legendre_equator_ratio, log_gamma};

/// A spacetime point in spherical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacetimePoint {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Field value with its carrier/envelope decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// Phase of the carrier e^{i(nφ/b − (N−α)t/(b rₙ))}.
    pub carrier_phase: f64,
    /// Real cosine envelope.
    pub envelope: f64,
    pub position: SpacetimePoint,
}

/// The ± mode pair of an orbit with amplitudes fixed by A± R(rₙ) P(0) = u₀/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchedPair {
    pub plus: Mode,
    pub minus: Mode,
    pub u0: f64,
    /// Internal-oscillator amplitude; the constraint forces z₀ = u₀.
    pub z0: f64,
    pub r_n: f64,
}

/// ln(k!!) for k >= -1.
fn ln_double_factorial(k: i64) -> f64 {
    if k <= 0 {
        return 0.0;
    }
    let kf = k as f64;
    let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).expect("positive").re;
    if k % 2 == 0 {
        0.5 * kf * 2f64.ln() + lg(0.5 * kf + 1.0)
    } else {
        0.5 * (kf + 1.0) * 2f64.ln() + lg(0.5 * kf + 1.0) - 0.5 * PI.ln()
    }
}

/// ln|P_l^{±m}(0)| and its sign, for l + m even.
fn ln_legendre_at_equator(l: u32, signed_m: i64) -> (f64, f64) {
    let m = signed_m.unsigned_abs() as i64;
    let l = l as i64;
    let mut ln = ln_double_factorial(l + m - 1) - ln_double_factorial(l - m);
    let mut sign = if ((l + m) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    if signed_m < 0 {
        let lg = |x: i64| log_gamma(Complex64::new(x as f64 + 1.0, 0.0)).expect("positive").re;
        ln += lg(l - m) - lg(l + m);
        if m % 2 == 1 {
            sign = -sign;
        }
    }
    (ln, sign)
}

/// ln R(r) for the mode (complex log; no overflow for large orders).
fn ln_radial(mode: &Mode, r: f64) -> Result<Complex64> {
    match mode.regime {
        Regime::Chargeless => {
            let l = mode.l as f64;
            let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).expect("positive").re;
            let j = crate::specfun::spherical_bessel_j(mode.l, mode.omega * r)?;
            let ln_pref = -l * (2.0 * mode.omega).ln() + lg(2.0 * l + 2.0) - lg(l + 1.0);
            Ok(Complex64::new(ln_pref + j.abs().ln(), if j < 0.0 { PI } else { 0.0 }))
        }
        _ => {
            let (a, b, wt) = mode.kummer_parameters();
            let m = kummer_m(a, b, Complex64::new(0.0, -2.0 * wt * r))?;
            Ok(Complex64::new(mode.l_prime * r.ln(), wt * r) + m.ln())
        }
    }
}

fn match_one(mode: Mode, r_n: f64, u0: f64) -> Result<Mode> {
    if (mode.l + mode.m) % 2 == 1 {
        return Err(Error::UnmatchedParity {
            l: mode.l,
            m: mode.signed_m(),
        });
    }
    // Node test: compare |R(rₙ)| with R an eighth of a wavelength away.
    let (wt, _) = mode.radial_wave_constants();
    let delta = PI / (4.0 * wt);
    let mut neighbour: f64 = 0.0;
    for r in [r_n - delta, r_n + delta] {
        if r > 0.0 {
            neighbour = neighbour.max(radial_ratio(&mode, r, r_n)?.norm());
        }
    }
    if neighbour.is_finite() && neighbour > 1e10 {
        return Err(Error::NodeOnOrbit { value: 1.0 / neighbour });
    }
    let ln_r = ln_radial(&mode, r_n)?;
    let (ln_p, sign_p) = ln_legendre_at_equator(mode.l, mode.signed_m());
    let ln_a = Complex64::new((0.5 * u0).ln(), 0.0) - ln_r - ln_p;
    let amp = sign_p * ln_a.exp();
    Ok(mode.with_amplitude(amp))
}

/// Fix A± so that each mode contributes u₀/2 on the orbit at θ = π/2.
///
/// Amplitudes are computed in log space; for very large orders they may
/// underflow to zero, in which case [`MatchedPair::eval`] (which works with
/// normalised ratios) must be used instead of [`eval_mode`].
pub fn match_amplitudes(orbit: &OrbitSolution, modes: (Mode, Mode), u0: f64) -> Result<MatchedPair> {
    if !(u0 > 0.0 && u0.is_finite()) {
        return Err(Error::param("u0", format!("need u0 > 0, got {u0}")));
    }
    let (plus, minus) = modes;
    if plus.sign != Sign::Plus || minus.sign != Sign::Minus {
        return Err(Error::Usage("match_amplitudes expects (plus, minus) modes".into()));
    }
    Ok(MatchedPair {
        plus: match_one(plus, orbit.r, u0)?,
        minus: match_one(minus, orbit.r, u0)?,
        u0,
        z0: u0,
        r_n: orbit.r,
    })
}

impl MatchedPair {
    /// Default pair l± = m± for the orbit.
    pub fn for_orbit(orbit: &OrbitSolution, u0: f64) -> Result<Self> {
        let plus = Mode::from_orbit(orbit, Sign::Plus, None)?;
        let minus = Mode::from_orbit(orbit, Sign::Minus, None)?;
        match_amplitudes(orbit, (plus, minus), u0)
    }

    pub(crate) fn radial_ratios(&self) -> Result<(RadialRatio, RadialRatio)> {
        Ok((
            RadialRatio::new(&self.plus, self.r_n)?,
            RadialRatio::new(&self.minus, self.r_n)?,
        ))
    }

    /// Assemble u from the radial ratios R±(r)/R±(rₙ) already evaluated at r.
    pub(crate) fn combine(&self, rad: (Complex64, Complex64), t: f64, theta: f64, phi: f64) -> Complex64 {
        let x = theta.cos().clamp(-1.0, 1.0);
        let one = |mode: &Mode, rad: Complex64| {
            let ang = legendre_equator_ratio(mode.l, mode.m, x);
            if ang == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::from_polar(0.5 * self.u0, mode.signed_m() as f64 * phi - mode.omega * t) * rad * ang
        };
        one(&self.plus, rad.0) + one(&self.minus, rad.1)
    }

    /// u = u₊ + u₋ at (t, r, θ, φ), via normalised ratios.
    pub fn eval(&self, t: f64, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::domain("eval", format!("theta = {theta} outside [0, pi]")));
        }
        let (p, m) = self.radial_ratios()?;
        Ok(self.combine((p.at(r)?, m.at(r)?), t, theta, phi))
    }

    /// u₊ + u₋ through [`eval_mode`] with the stored amplitudes.
    pub fn eval_direct(&self, t: f64, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
        Ok(eval_mode(&self.plus, t, r, theta, phi)? + eval_mode(&self.minus, t, r, theta, phi)?)
    }
}

/// The two-mode field on the orbit in closed form,
/// u₀ e^{i(nφ/b − (N−α)t/(b rₙ))} cos(Nφ/b − n t/(b rₙ)).
pub fn field_on_orbit(orbit: &OrbitSolution, u0: f64, t: f64, phi: f64) -> FieldSample {
    let b = orbit.b;
    let carrier_phase = orbit.n * phi / b - (orbit.big_n - orbit.alpha) * t / (b * orbit.r);
    let envelope = (orbit.big_n * phi / b - orbit.n * t / (b * orbit.r)).cos();
    FieldSample {
        value: Complex64::from_polar(u0 * envelope, carrier_phase),
        carrier_phase,
        envelope,
        position: SpacetimePoint {
            t,
            r: orbit.r,
            theta: FRAC_PI_2,
            phi,
        },
    }
}
