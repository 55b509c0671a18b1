//! Dormand–Prince 5(4) with Hairer's fourth-order dense output.
//!
//! The solution update is accumulated with compensated summation; over
//! 10⁵ steps the plain sum would lose several digits on slowly growing
//! components such as proper time.

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Continuous extension of one accepted step.
pub(crate) struct Dense<const D: usize> {
    t0: f64,
    h: f64,
    rc: [[f64; D]; 5],
}

impl<const D: usize> Dense<D> {
    pub(crate) fn eval(&self, t: f64) -> [f64; D] {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        std::array::from_fn(|i| {
            let rc = |k: usize| self.rc[k][i];
            rc(0) + th * (rc(1) + th1 * (rc(2) + th * (rc(3) + th1 * rc(4))))
        })
    }
}

pub(crate) struct Options {
    pub tol: f64,
    pub max_steps: usize,
}

/// Why the integration stopped early.
pub(crate) struct Failure {
    pub t: f64,
    pub reason: String,
}

fn axpy<const D: usize>(y: &[f64; D], h: f64, terms: &[(f64, &[f64; D])]) -> [f64; D] {
    let mut out = *y;
    for i in 0..D {
        let s: f64 = terms.iter().map(|(c, k)| c * k[i]).sum();
        out[i] += h * s;
    }
    out
}

fn rms_norm<const D: usize>(v: &[f64; D], sc: &[f64; D]) -> f64 {
    (v.iter().zip(sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / D as f64).sqrt()
}

/// Integrate y' = f(t, y) from t0 to t_end (either direction).
///
/// `f` may refuse a point (for instance inside a singularity cutoff); the
/// step is then retried with a quarter of the size. `on_step` receives the
/// continuous extension of every accepted step and the new state.
pub(crate) fn dopri5<const D: usize, F, E, S>(
    mut f: F,
    t0: f64,
    y0: [f64; D],
    t_end: f64,
    opts: &Options,
    mut on_step: S,
) -> Result<(), Failure>
where
    F: FnMut(f64, &[f64; D]) -> Result<[f64; D], E>,
    E: std::fmt::Display,
    S: FnMut(&Dense<D>, f64, &[f64; D]),
{
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let span = (t_end - t0).abs();
    if span == 0.0 {
        return Ok(());
    }
    let tol = opts.tol;
    let scale = |a: &[f64; D], b: &[f64; D]| {
        let mut s = [0.0; D];
        for i in 0..D {
            s[i] = tol + tol * a[i].abs().max(b[i].abs());
        }
        s
    };
    let fail = |t: f64, reason: String| Failure { t, reason };

    let mut t = t0;
    let mut t_comp = 0.0;
    let mut y = y0;
    let mut y_comp = [0.0; D];
    let mut k1 = f(t, &y).map_err(|e| fail(t, e.to_string()))?;

    // initial step guess
    let sc = scale(&y, &y);
    let d0 = rms_norm(&y, &sc);
    let d1 = rms_norm(&k1, &sc);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(span);
    if let Ok(k) = f(t + dir * h, &axpy(&y, dir * h, &[(1.0, &k1)])) {
        let mut diff = [0.0; D];
        for i in 0..D {
            diff[i] = k[i] - k1[i];
        }
        let d2 = rms_norm(&diff, &sc) / h;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        h = (100.0 * h).min(h1).min(span);
    }

    let mut steps = 0usize;
    loop {
        let remaining = (t_end - t) * dir;
        if remaining <= 0.0 {
            return Ok(());
        }
        if steps >= opts.max_steps {
            return Err(fail(t, format!("step budget of {} exhausted", opts.max_steps)));
        }
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        let h_min = 16.0 * f64::EPSILON * t.abs().max(span * 1e-3);
        if h < h_min {
            return Err(fail(t, format!("step size collapsed to {h:e}")));
        }
        let hs = dir * h;

        let stages = (|| -> Result<_, E> {
            let k2 = f(t + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]))?;
            let k3 = f(t + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = f(t + C4 * hs, &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
            let k5 = f(
                t + C5 * hs,
                &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            )?;
            let k6 = f(
                t + hs,
                &axpy(&y, hs, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            )?;
            let mut incr = [0.0; D];
            for i in 0..D {
                incr[i] = hs * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
            }
            let mut y1 = y;
            for i in 0..D {
                y1[i] += incr[i];
            }
            let k7 = f(t + hs, &y1)?;
            Ok((k2, k3, k4, k5, k6, k7, incr, y1))
        })();

        let (_k2, k3, k4, k5, k6, k7, incr, y1) = match stages {
            Ok(s) => s,
            Err(e) => {
                h *= 0.25;
                if h < h_min {
                    return Err(fail(t, e.to_string()));
                }
                continue;
            }
        };
        steps += 1;

        let mut err = [0.0; D];
        for i in 0..D {
            err[i] = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let en = rms_norm(&err, &scale(&y, &y1));
        if !en.is_finite() {
            h *= 0.25;
            continue;
        }
        if en > 1.0 {
            h *= (0.9 * en.powf(-0.2)).max(0.2);
            continue;
        }

        // accepted: compensated update of t and y
        let mut y_new = y;
        for i in 0..D {
            let adj = incr[i] - y_comp[i];
            let s = y[i] + adj;
            y_comp[i] = (s - y[i]) - adj;
            y_new[i] = s;
        }
        let t_new = if last {
            t_comp = 0.0;
            t_end
        } else {
            let adj = hs - t_comp;
            let s = t + adj;
            t_comp = (s - t) - adj;
            s
        };

        let mut dense = Dense {
            t0: t,
            h: t_new - t,
            rc: [[0.0; D]; 5],
        };
        for i in 0..D {
            let ydiff = y_new[i] - y[i];
            let bspl = hs * k1[i] - ydiff;
            dense.rc[0][i] = y[i];
            dense.rc[1][i] = ydiff;
            dense.rc[2][i] = bspl;
            dense.rc[3][i] = ydiff - hs * k7[i] - bspl;
            dense.rc[4][i] = hs * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
        }
        on_step(&dense, t_new, &y_new);

        t = t_new;
        y = y_new;
        k1 = k7;
        if last {
            return Ok(());
        }
        let fac = if en == 0.0 {
            10.0
        } else {
            (0.9 * en.powf(-0.2)).clamp(0.2, 10.0)
        };
        h *= fac;
    }
}
