//! Kummer's confluent hypergeometric function M(a, b, z) = ₁F₁(a; b; z).
//!
//! Three evaluation paths are combined:
//!
//! * the power series, summed with Neumaier compensation, when it is well
//!   conditioned (the running sum of |terms| is compared with the result);
//! * the large-|z| asymptotic expansion (two Poincaré series, one carrying
//!   e^z and one carrying z^{-a}) when both series reach working precision
//!   before they start to diverge;
//! * otherwise, analytic continuation of the Kummer ODE along the ray from a
//!   small starting point z₀ = z·ρ₀/|z| (where the series is accurate) out to
//!   z, using local Taylor expansions whose coefficients follow from the ODE.
//!
//! The continuation path is what keeps purely imaginary arguments of a few
//! tens to a few hundreds accurate; there the power series loses e^{|z|/2}
//! to cancellation while the asymptotic series has not converged yet.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::log_gamma;
use crate::error::{Error, Result};

/// Tuning knobs for [`kummer_m_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerConfig {
    /// Largest |z| for which the power series is attempted.
    pub z_switch: f64,
    /// Largest |z| accepted at all.
    pub z_max: f64,
    /// Term budget for each series.
    pub max_terms: usize,
    /// Relative accuracy demanded from the series and asymptotic paths.
    pub tol: f64,
    /// Largest Taylor step of the continuation path.
    pub max_step: f64,
}

impl Default for KummerConfig {
    fn default() -> Self {
        Self {
            z_switch: 60.0,
            z_max: 1.0e6,
            max_terms: 4000,
            tol: 1.0e-13,
            max_step: 2.0,
        }
    }
}

/// Which algorithm produced a value; exposed for diagnostics and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KummerPath {
    Trivial,
    Series,
    Asymptotic,
    Continuation,
}

/// M(a, b, z) with the default configuration.
pub fn kummer_m(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    kummer_m_with(&KummerConfig::default(), a, b, z).map(|(m, _)| m)
}

/// M(a, b, z) together with the path that produced it.
pub fn kummer_m_with(cfg: &KummerConfig, a: Complex64, b: Complex64, z: Complex64) -> Result<(Complex64, KummerPath)> {
    for (name, v) in [("a", a), ("b", b), ("z", z)] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::domain("kummer_m", format!("non-finite {name} = {v}")));
        }
    }
    if is_nonpositive_integer(b) {
        return Err(Error::domain("kummer_m", format!("b = {} is a pole", b.re)));
    }
    if z.norm() > cfg.z_max {
        return Err(Error::domain(
            "kummer_m",
            format!("|z| = {} exceeds the evaluation range {}", z.norm(), cfg.z_max),
        ));
    }
    let one = Complex64::new(1.0, 0.0);
    if z == Complex64::new(0.0, 0.0) || a == Complex64::new(0.0, 0.0) {
        return Ok((one, KummerPath::Trivial));
    }
    if a == b {
        return Ok((z.exp(), KummerPath::Trivial));
    }
    if is_nonpositive_integer(a) {
        // Terminating polynomial; no convergence question.
        let s = series(a, b, z, cfg.max_terms);
        return Ok((s.sum, KummerPath::Series));
    }

    if z.norm() <= cfg.z_switch {
        let s = series(a, b, z, cfg.max_terms);
        if s.converged && s.well_conditioned(cfg.tol) {
            return Ok((s.sum, KummerPath::Series));
        }
    }
    if let Some(m) = asymptotic(a, b, z, cfg)? {
        return Ok((m, KummerPath::Asymptotic));
    }
    continuation(a, b, z, cfg).map(|(m, _)| (m, KummerPath::Continuation))
}

/// M and dM/dz at the same point.
pub fn kummer_m_and_derivative(a: Complex64, b: Complex64, z: Complex64) -> Result<(Complex64, Complex64)> {
    let cfg = KummerConfig::default();
    let m = kummer_m_with(&cfg, a, b, z)?.0;
    // dM/dz = (a/b) M(a+1, b+1, z)
    let m1 = kummer_m_with(&cfg, a + 1.0, b + 1.0, z)?.0;
    Ok((m, a / b * m1))
}

fn is_nonpositive_integer(v: Complex64) -> bool {
    v.im == 0.0 && v.re <= 0.0 && v.re == v.re.round()
}

struct SeriesSum {
    sum: Complex64,
    abs_sum: f64,
    terms: usize,
    converged: bool,
}

impl SeriesSum {
    fn well_conditioned(&self, tol: f64) -> bool {
        let noise = f64::EPSILON * self.abs_sum * (self.terms as f64).sqrt().max(1.0);
        noise <= tol * self.sum.norm()
    }
}

/// Neumaier-compensated complex sum.
#[derive(Default, Clone, Copy)]
struct Compensated {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

impl Compensated {
    fn add(&mut self, v: Complex64) {
        fn step(sum: &mut f64, comp: &mut f64, x: f64) {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *comp += (*sum - t) + x;
            } else {
                *comp += (x - t) + *sum;
            }
            *sum = t;
        }
        step(&mut self.re, &mut self.re_c, v.re);
        step(&mut self.im, &mut self.im_c, v.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

fn series(a: Complex64, b: Complex64, z: Complex64, max_terms: usize) -> SeriesSum {
    let mut acc = Compensated::default();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut abs_sum = 1.0;
    let mut small_run = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        let num = a + kf;
        if num == Complex64::new(0.0, 0.0) {
            return SeriesSum {
                sum: acc.value(),
                abs_sum,
                terms: k + 1,
                converged: true,
            };
        }
        term *= num * z / ((b + kf) * (kf + 1.0));
        acc.add(term);
        abs_sum += term.norm();
        let sum = acc.value();
        let ratio = ((a + kf + 1.0) * z / ((b + kf + 1.0) * (kf + 2.0))).norm();
        if term.norm() <= 0.5 * f64::EPSILON * sum.norm() && ratio < 1.0 {
            small_run += 1;
            if small_run >= 2 {
                return SeriesSum {
                    sum,
                    abs_sum,
                    terms: k + 2,
                    converged: true,
                };
            }
        } else {
            small_run = 0;
        }
    }
    SeriesSum {
        sum: acc.value(),
        abs_sum,
        terms: max_terms,
        converged: false,
    }
}

/// Sum of a Poincaré series Σ (p)_s (q)_s / s! · w^s, stopping at the
/// smallest term. Returns (sum, magnitude of the last term used) or `None`
/// if the terms start growing before reaching working precision.
fn poincare(p: Complex64, q: Complex64, w: Complex64, max_terms: usize) -> Option<(Complex64, f64)> {
    let mut acc = Compensated::default();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    let mut prev = 1.0;
    for s in 0..max_terms {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) * w / (sf + 1.0);
        let mag = next.norm();
        if mag == 0.0 {
            return Some((acc.value(), 0.0));
        }
        if mag > prev {
            return None;
        }
        acc.add(next);
        let sum = acc.value();
        if mag <= 0.5 * f64::EPSILON * sum.norm() {
            return Some((sum, mag));
        }
        term = next;
        prev = mag;
    }
    None
}

fn asymptotic(a: Complex64, b: Complex64, z: Complex64, cfg: &KummerConfig) -> Result<Option<Complex64>> {
    let one = Complex64::new(1.0, 0.0);
    let inv_z = one / z;
    let Some((s1, last1)) = poincare(one - a, b - a, inv_z, cfg.max_terms) else {
        return Ok(None);
    };
    let Some((s2, last2)) = poincare(a, a - b + 1.0, -inv_z, cfg.max_terms) else {
        return Ok(None);
    };
    let ln_z = z.ln();
    let lg_b = log_gamma(b)?;
    // Sign of the connection phase e^{±πia}: + for arg z >= 0, - otherwise.
    let sigma = if z.arg() >= 0.0 { 1.0 } else { -1.0 };
    let i = Complex64::i();

    let pref1 = if is_nonpositive_integer(a) {
        Complex64::new(0.0, 0.0)
    } else {
        (lg_b - log_gamma(a)? + z + (a - b) * ln_z).exp()
    };
    let pref2 = if is_nonpositive_integer(b - a) {
        Complex64::new(0.0, 0.0)
    } else {
        (lg_b - log_gamma(b - a)? + sigma * PI * i * a - a * ln_z).exp()
    };
    let p1 = pref1 * s1;
    let p2 = pref2 * s2;
    let m = p1 + p2;
    if !(m.re.is_finite() && m.im.is_finite()) {
        return Err(Error::Accuracy {
            function: "kummer_m",
            estimate: m,
        });
    }
    // Truncation error is judged against the envelope |p1| + |p2|: close to a
    // zero of M the two pieces cancel, and no other path does better there.
    let err = pref1.norm() * last1 + pref2.norm() * last2;
    if err <= cfg.tol * (p1.norm() + p2.norm()) {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}

/// Continue (M, M') along the ray through `z`, starting where the power
/// series is accurate. Returns M(z) and M'(z).
fn continuation(a: Complex64, b: Complex64, z: Complex64, cfg: &KummerConfig) -> Result<(Complex64, Complex64)> {
    let dir = z / z.norm();
    // Start as far out as the power series stays well conditioned.
    let mut rho0 = z.norm().min(cfg.z_switch);
    let (mut m, mut dm) = loop {
        let z0 = dir * rho0;
        let s0 = series(a, b, z0, cfg.max_terms);
        let s1 = series(a + 1.0, b + 1.0, z0, cfg.max_terms);
        if s0.converged && s1.converged && s0.well_conditioned(cfg.tol) && s1.well_conditioned(cfg.tol) {
            break (s0.sum, a / b * s1.sum);
        }
        if rho0 < 1e-3 {
            return Err(Error::Accuracy {
                function: "kummer_m",
                estimate: s0.sum,
            });
        }
        rho0 *= 0.5;
    };

    let target = z.norm();
    let mut rho = rho0;
    while rho < target {
        let zc = dir * rho;
        // Local coefficients grow like (|h||b - zc|/|zc|)^k / k! before they
        // decay; keep that factor near two to avoid cancellation.
        let step = (0.5 * rho)
            .min(cfg.max_step)
            .min(2.0 * rho / (b - zc).norm().max(1e-300))
            .min(target - rho);
        let h = dir * step;
        let (m_new, dm_new) = taylor_step(a, b, zc, h, m, dm, cfg.max_terms).ok_or(Error::Accuracy {
            function: "kummer_m",
            estimate: m,
        })?;
        m = m_new;
        dm = dm_new;
        rho += step;
    }
    Ok((m, dm))
}

/// One Taylor step of z M'' + (b - z) M' - a M = 0 from `zc` to `zc + h`.
/// Works with scaled coefficients e_k = c_k h^k.
fn taylor_step(
    a: Complex64,
    b: Complex64,
    zc: Complex64,
    h: Complex64,
    m: Complex64,
    dm: Complex64,
    max_terms: usize,
) -> Option<(Complex64, Complex64)> {
    let mut e_prev = m;
    let mut e_cur = h * dm;
    let mut sum = Compensated::default();
    let mut dsum = Compensated::default();
    sum.add(e_prev);
    sum.add(e_cur);
    dsum.add(e_cur);
    let h2 = h * h;
    let mut small_run = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        let e_next = (h2 * (a + kf) * e_prev - h * (kf + 1.0) * (b + kf - zc) * e_cur) / (zc * (kf + 2.0) * (kf + 1.0));
        sum.add(e_next);
        dsum.add(e_next * (kf + 2.0));
        let scale = sum.value().norm() + dsum.value().norm();
        if e_next.norm() * (kf + 2.0) <= 0.25 * f64::EPSILON * scale {
            small_run += 1;
            if small_run >= 2 {
                return Some((sum.value(), dsum.value() / h));
            }
        } else {
            small_run = 0;
        }
        e_prev = e_cur;
        e_cur = e_next;
    }
    None
}
