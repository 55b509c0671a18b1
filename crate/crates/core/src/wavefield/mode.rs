use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantization::OrbitSolution;
use crate::specfun::{arg_gamma, assoc_legendre, kummer_m, log_gamma, spherical_bessel_j, LegendreOrder};

/// Direction of azimuthal propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Which radial equation the mode solves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    /// Massless field with charge parameter β.
    Coulomb { beta: f64 },
    /// β = 0: spherical Bessel radial functions.
    Chargeless,
    /// Field with Compton frequency ω₀ > 0.
    KleinGordon { beta: f64, omega0: f64 },
}

impl Regime {
    pub fn beta(&self) -> f64 {
        match *self {
            Regime::Coulomb { beta } | Regime::KleinGordon { beta, .. } => beta,
            Regime::Chargeless => 0.0,
        }
    }

    pub fn omega0(&self) -> f64 {
        match *self {
            Regime::KleinGordon { omega0, .. } => omega0,
            _ => 0.0,
        }
    }

    /// Regime implied by β and ω₀.
    pub fn from_constants(beta: f64, omega0: f64) -> Self {
        if omega0 > 0.0 {
            Regime::KleinGordon { beta, omega0 }
        } else if beta == 0.0 {
            Regime::Chargeless
        } else {
            Regime::Coulomb { beta }
        }
    }
}

/// One eigenmode A·R(r)·P_l^{±m}(cos θ)·e^{i(±mφ − ωt)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub sign: Sign,
    pub l: u32,
    pub m: u32,
    pub omega: f64,
    /// Effective order l′ of the radial function.
    pub l_prime: f64,
    pub regime: Regime,
    #[serde(serialize_with = "ser_complex")]
    pub amplitude: Complex64,
}

pub(crate) fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

/// l′ = −1/2 + √((l + 1/2)² − β²).
pub fn effective_order(l: u32, beta: f64) -> Result<f64> {
    let lh = l as f64 + 0.5;
    if !(beta.abs() < lh) {
        return Err(Error::SupercriticalCharge { l, beta });
    }
    if beta == 0.0 {
        return Ok(l as f64);
    }
    // (lh - β)(lh + β) keeps precision when β ≪ lh
    Ok(-0.5 + ((lh - beta) * (lh + beta)).sqrt())
}

impl Mode {
    /// A mode with unit amplitude.
    pub fn new(sign: Sign, l: u32, m: u32, omega: f64, regime: Regime) -> Result<Self> {
        if m > l {
            return Err(Error::param("m", format!("need m <= l, got m = {m}, l = {l}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::param("omega", format!("need omega > 0, got {omega}")));
        }
        if let Regime::KleinGordon { omega0, .. } = regime {
            if omega <= omega0 {
                return Err(Error::Evanescent { omega, omega0 });
            }
        }
        let l_prime = effective_order(l, regime.beta())?;
        Ok(Self {
            sign,
            l,
            m,
            omega,
            l_prime,
            regime,
            amplitude: Complex64::new(1.0, 0.0),
        })
    }

    /// The ± mode of an orbit with l = m± unless `l` is given.
    pub fn from_orbit(orbit: &OrbitSolution, sign: Sign, l: Option<u32>) -> Result<Self> {
        let (m_real, omega) = match sign {
            Sign::Plus => (orbit.m_plus, orbit.omega_plus),
            Sign::Minus => (orbit.m_minus, orbit.omega_minus),
        };
        let m = integer_mode(m_real)?;
        let l = l.unwrap_or(m);
        Self::new(sign, l, m, omega, Regime::from_constants(orbit.beta, orbit.omega0))
    }

    pub fn with_amplitude(mut self, amplitude: Complex64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn beta(&self) -> f64 {
        self.regime.beta()
    }

    /// Azimuthal number with sign: +m or −m.
    pub fn signed_m(&self) -> i64 {
        match self.sign {
            Sign::Plus => self.m as i64,
            Sign::Minus => -(self.m as i64),
        }
    }

    /// (ω̃, β̃) entering the Kummer form; equal to (ω, β) unless ω₀ > 0.
    pub fn radial_wave_constants(&self) -> (f64, f64) {
        match self.regime {
            Regime::KleinGordon { beta, omega0 } => {
                let wt = ((self.omega - omega0) * (self.omega + omega0)).sqrt();
                (wt, beta * self.omega / wt)
            }
            _ => (self.omega, self.beta()),
        }
    }

    fn legendre_order(&self) -> Result<LegendreOrder> {
        LegendreOrder::new(self.l, self.signed_m() as i32)
    }

    /// P_l^{±m}(cos θ).
    pub fn angular(&self, theta: f64) -> Result<f64> {
        assoc_legendre(self.legendre_order()?, theta.cos().clamp(-1.0, 1.0))
    }

    /// Kummer argument set (a, b, ω̃) for the charged regimes.
    pub(crate) fn kummer_parameters(&self) -> (Complex64, Complex64, f64) {
        let (wt, bt) = self.radial_wave_constants();
        let a = Complex64::new(self.l_prime + 1.0, -bt);
        let b = Complex64::new(2.0 * self.l_prime + 2.0, 0.0);
        (a, b, wt)
    }
}

/// Nearest integer to a mode number, or an error if it is not one.
pub fn integer_mode(value: f64) -> Result<u32> {
    let rounded = value.round();
    let residual = (value - rounded).abs();
    if residual > crate::quantization::DEFAULT_INTEGER_TOL || rounded < 0.0 || rounded > u32::MAX as f64 {
        return Err(Error::NonIntegerMode { value, residual });
    }
    Ok(rounded as u32)
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("radial", format!("need r > 0, got {r}")));
    }
    Ok(())
}

fn finite(function: &'static str, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(function, "value overflows binary64"))
    }
}

/// Radial function R(r) of the mode (unnormalised, amplitude not applied).
///
/// * Coulomb: e^{iωr} r^{l′} M(l′+1−iβ, 2l′+2, −2iωr)
/// * chargeless: (2ω)^{−l} (2l+1)!/l! · j_l(ωr)
/// * Klein–Gordon: the Coulomb form with ω̃ = √(ω²−ω₀²), β̃ = βω/ω̃
///
/// The result is real up to rounding; it is returned as a complex number
/// because the Kummer form is complex term by term.
pub fn radial(mode: &Mode, r: f64) -> Result<Complex64> {
    check_r(r)?;
    match mode.regime {
        Regime::Chargeless => {
            let l = mode.l as f64;
            let ln_pref = -l * (2.0 * mode.omega).ln() + ln_factorial(2 * mode.l + 1) - ln_factorial(mode.l);
            let j = spherical_bessel_j(mode.l, mode.omega * r)?;
            finite("radial", Complex64::new(ln_pref.exp() * j, 0.0))
        }
        _ => {
            let (a, b, wt) = mode.kummer_parameters();
            let z = Complex64::new(0.0, -2.0 * wt * r);
            let m = kummer_m(a, b, z)?;
            let phase = Complex64::from_polar(1.0, wt * r);
            finite("radial", phase * r.powf(mode.l_prime) * m)
        }
    }
}

/// R(r)/R(r_ref) without forming either factor separately, so that orders
/// whose R overflows binary64 remain usable.
pub fn radial_ratio(mode: &Mode, r: f64, r_ref: f64) -> Result<Complex64> {
    RadialRatio::new(mode, r_ref)?.at(r)
}

/// [`radial_ratio`] with the reference evaluation done once.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialRatio {
    mode: Mode,
    r_ref: f64,
    denom: Complex64,
}

impl RadialRatio {
    pub(crate) fn new(mode: &Mode, r_ref: f64) -> Result<Self> {
        check_r(r_ref)?;
        let denom = match mode.regime {
            Regime::Chargeless => Complex64::new(spherical_bessel_j(mode.l, mode.omega * r_ref)?, 0.0),
            _ => {
                let (a, b, wt) = mode.kummer_parameters();
                kummer_m(a, b, Complex64::new(0.0, -2.0 * wt * r_ref))?
            }
        };
        Ok(RadialRatio {
            mode: *mode,
            r_ref,
            denom,
        })
    }

    pub(crate) fn at(&self, r: f64) -> Result<Complex64> {
        check_r(r)?;
        let mode = &self.mode;
        match mode.regime {
            Regime::Chargeless => {
                let j = spherical_bessel_j(mode.l, mode.omega * r)?;
                finite("radial_ratio", scaled_div(Complex64::new(j, 0.0), self.denom))
            }
            _ => {
                let (a, b, wt) = mode.kummer_parameters();
                let m = kummer_m(a, b, Complex64::new(0.0, -2.0 * wt * r))?;
                let phase = Complex64::from_polar((r / self.r_ref).powf(mode.l_prime), wt * (r - self.r_ref));
                finite("radial_ratio", phase * scaled_div(m, self.denom))
            }
        }
    }
}

/// a/b without forming |b|², which underflows for |b| below about 1e-154.
fn scaled_div(a: Complex64, b: Complex64) -> Complex64 {
    let s = b.norm();
    (a / s) / (b / s)
}

fn ln_factorial(k: u32) -> f64 {
    log_gamma(Complex64::new(k as f64 + 1.0, 0.0))
        .expect("positive argument")
        .re
}

/// Coulomb phase η = arg Γ(l′ + 1 − iβ̃).
pub fn coulomb_phase(mode: &Mode) -> Result<f64> {
    let (_, bt) = mode.radial_wave_constants();
    arg_gamma(Complex64::new(mode.l_prime + 1.0, -bt))
}

/// Normalisation C with R(r) ≈ C sin(ωr − πl′/2 + δ)/(ωr) at large ωr.
///
/// C = e^{iη} e^{−πβ̃/2} Γ(2l′+2) / ((2ω̃)^{l′} Γ(l′+1−iβ̃)), which is real
/// because the phase of Γ(l′+1−iβ̃) is η.
pub fn asymptotic_normalization(mode: &Mode) -> Result<Complex64> {
    let (wt, bt) = mode.radial_wave_constants();
    let lp = mode.l_prime;
    let lg_num = log_gamma(Complex64::new(2.0 * lp + 2.0, 0.0))?.re;
    let lg_den = log_gamma(Complex64::new(lp + 1.0, -bt))?;
    let eta = coulomb_phase(mode)?;
    let ln_c = Complex64::new(-PI * bt / 2.0 + lg_num - lp * (2.0 * wt).ln(), eta) - lg_den;
    finite("asymptotic_normalization", ln_c.exp())
}

/// Large-ωr form C sin(ω̃r − πl′/2 + δ)/(ω̃r), δ = β̃ ln(2ω̃r) + η.
pub fn radial_asymptotic(mode: &Mode, r: f64) -> Result<Complex64> {
    check_r(r)?;
    let (wt, bt) = mode.radial_wave_constants();
    let c = asymptotic_normalization(mode)?;
    let eta = coulomb_phase(mode)?;
    let rho = wt * r;
    let delta = bt * (2.0 * rho).ln() + eta;
    Ok(c * ((rho - PI * mode.l_prime / 2.0 + delta).sin() / rho))
}

/// Largest deviation between [`radial`] and [`radial_asymptotic`] over one
/// wavelength starting at ω̃r = `rho`, divided by the envelope |C|/(ω̃r).
///
/// Normalising by the envelope rather than pointwise avoids the spurious
/// blow-up of a relative error near zeros of the sine.
pub fn asymptotic_deviation(mode: &Mode, rho: f64, samples: usize) -> Result<f64> {
    let (wt, _) = mode.radial_wave_constants();
    let c = asymptotic_normalization(mode)?.norm();
    let samples = samples.max(2);
    let mut worst: f64 = 0.0;
    for k in 0..samples {
        let x = rho + 2.0 * PI * k as f64 / samples as f64;
        let r = x / wt;
        let exact = radial(mode, r)?;
        let asy = radial_asymptotic(mode, r)?;
        worst = worst.max((exact - asy).norm() / (c / x));
    }
    Ok(worst)
}

/// A·R(r)·P_l^{±m}(cos θ)·e^{i(±mφ − ωt)}.
pub fn eval_mode(mode: &Mode, t: f64, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain("eval_mode", format!("theta = {theta} outside [0, pi]")));
    }
    let ang = mode.angular(theta)?;
    if ang == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rad = radial(mode, r)?;
    let phase = Complex64::from_polar(1.0, mode.signed_m() as f64 * phi - mode.omega * t);
    finite("eval_mode", mode.amplitude * rad * ang * phase)
}
