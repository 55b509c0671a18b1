use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use super::check::run_checks;
use super::config::{Number, RunConfig};
use super::envelope::{Cell, Payload, ResultEnvelope};
use crate::dynamics::{
    circular_initials, conservation_report, constraint_residual, integrate_orbit_with, phase_drift_rate,
    GeneralForceSpec, IntegrationOptions, MotionParams, TrajectoryState,
};
use crate::error::{Error, Result};
use crate::quantization::{mode_numbers_exact, rational_to_f64, solve_orbit, OrbitSolution};
use crate::wavefield::{default_extent, intensity_map, orbit_wave_curve, MatchedPair, Plane};

/// What went wrong after a (possibly partial) envelope was produced.
#[derive(Debug)]
pub enum Failure {
    Numerical(Error),
    Checks { failed: usize },
}

/// Envelope plus the status the exit code is derived from.
#[derive(Debug)]
pub struct Outcome {
    pub envelope: ResultEnvelope,
    pub failure: Option<Failure>,
}

impl Outcome {
    fn ok(envelope: ResultEnvelope) -> Self {
        Outcome {
            envelope,
            failure: None,
        }
    }
}

/// The mode-number table columns: n = 1/2, 1, 3/2, 2, 5/2, 10.
pub fn table2_n() -> Vec<Number> {
    vec!["1/2".into(), 1.into(), "3/2".into(), 2.into(), "5/2".into(), 10.into()]
}

/// Exact decimal when the denominator is 2^a 5^b, `p/q` otherwise.
pub fn format_exact(q: &BigRational) -> String {
    let mut d = q.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut digits = 0usize;
    let mut twos = 0usize;
    let mut fives = 0usize;
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    digits += twos.max(fives);
    if digits == 0 {
        return q.numer().to_string();
    }
    let scaled = q * BigRational::from_integer(BigInt::from(10).pow(digits as u32));
    let s = scaled.to_integer().abs().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if q.is_negative() { "-" } else { "" })
}

fn label(n: &Number) -> String {
    match n {
        Number::Int(i) => i.to_string(),
        Number::Float(x) => x.to_string(),
        Number::Text(s) => s.clone(),
    }
}

/// Solver errors other than configuration problems carry the offending n.
fn with_n(n: &Number, e: Error) -> Error {
    if e.is_config() {
        e
    } else {
        Error::Domain {
            function: "solve_orbit",
            detail: format!("n = {}: {e}", label(n)),
        }
    }
}

fn solve_all(cfg: &RunConfig, default_n: &[Number]) -> Result<Vec<(Number, BigRational, OrbitSolution)>> {
    let rp = cfg.resolve_params()?;
    let mut out = Vec::new();
    for (n, q, f) in cfg.n_values(default_n)? {
        let exact = mode_numbers_exact(&rp.alpha_exact, &rp.b_exact, &q)?;
        if cfg.strict_n && !exact.is_integral() {
            let (mp, _) = exact.to_f64();
            return Err(Error::NonIntegerMode {
                value: mp,
                residual: rational_to_f64(&exact.residual()),
            });
        }
        let orbit = solve_orbit(&rp.params, f).map_err(|e| with_n(&n, e))?;
        out.push((n, q, orbit));
    }
    Ok(out)
}

/// Per-n orbit quantities.
pub fn cmd_orbit(cfg: &RunConfig) -> Result<Outcome> {
    let rp = cfg.resolve_params()?;
    let mut p = Payload::new(&[
        "n",
        "N",
        "m_plus",
        "m_minus",
        "m_plus_integer",
        "m_minus_integer",
        "selection_ok",
        "selection_residual",
        "v",
        "r",
        "P",
        "E",
        "omega_plus",
        "omega_minus",
        "Omega_p",
        "z0_mod2",
    ]);
    for (n, q, o) in solve_all(cfg, &[1.into()])? {
        let exact = mode_numbers_exact(&rp.alpha_exact, &rp.b_exact, &q)?;
        p.push(vec![
            o.n.into(),
            o.big_n.into(),
            o.m_plus.into(),
            o.m_minus.into(),
            exact.m_plus.is_integer().into(),
            exact.m_minus.is_integer().into(),
            exact.is_integral().into(),
            rational_to_f64(&exact.residual()).into(),
            o.v.into(),
            o.r.into(),
            o.p.into(),
            o.e.into(),
            o.omega_plus.into(),
            o.omega_minus.into(),
            o.omega_p.into(),
            o.z0_mod2.into(),
        ]);
        if !exact.is_integral() {
            p.warnings.push(format!(
                "n = {}: m+ = {}, m- = {} are not integers",
                label(&n),
                format_exact(&exact.m_plus),
                format_exact(&exact.m_minus)
            ));
        }
    }
    Ok(Outcome::ok(ResultEnvelope::new("orbit", cfg, p)))
}

/// m± over n in the layout of the mode-number table, exact.
pub fn cmd_table(cfg: &RunConfig) -> Result<Outcome> {
    let rp = cfg.resolve_params()?;
    let ns = cfg.n_values(&table2_n())?;
    let mut columns = vec!["quantity".to_string()];
    let mut plus = vec![Cell::from("m_plus")];
    let mut minus = vec![Cell::from("m_minus")];
    let mut ok = vec![Cell::from("selection_ok")];
    for (n, q, _) in &ns {
        let exact = mode_numbers_exact(&rp.alpha_exact, &rp.b_exact, q)?;
        if cfg.strict_n && !exact.is_integral() {
            return Err(Error::NonIntegerMode {
                value: exact.to_f64().0,
                residual: rational_to_f64(&exact.residual()),
            });
        }
        columns.push(format!("n={}", format_exact(&n.exact()?)));
        plus.push(format_exact(&exact.m_plus).into());
        minus.push(format_exact(&exact.m_minus).into());
        ok.push(exact.is_integral().into());
    }
    let mut p = Payload::new(&[]);
    p.columns = columns;
    p.push(plus);
    p.push(minus);
    p.push(ok);
    p.meta("alpha", format_exact(&rp.alpha_exact));
    p.meta("b", format_exact(&rp.b_exact));
    Ok(Outcome::ok(ResultEnvelope::new("table", cfg, p)))
}

/// Sign changes of cos(aφ)cos(cφ) over one turn, for integer a, c ≥ 0:
/// zeros shared by both factors are double and do not change sign.
fn product_sign_changes(a: &BigInt, c: &BigInt) -> usize {
    let zeros = |k: &BigInt| -> BTreeSet<BigRational> {
        let kk = k.to_i64().unwrap_or(0);
        (0..2 * kk)
            .map(|j| BigRational::new(BigInt::from(2 * j + 1), 2 * k))
            .collect()
    };
    let za = zeros(a);
    let zc = zeros(c);
    za.symmetric_difference(&zc).count()
}

/// Total-field, phase-wave and orbit polylines per n.
pub fn cmd_orbit_wave(cfg: &RunConfig) -> Result<Outcome> {
    let rp = cfg.resolve_params()?;
    let mut p = Payload::new(&[
        "n", "phi", "total_x", "total_y", "phase_x", "phase_y", "circle_x", "circle_y",
    ]);
    let mut per_n = serde_json::Map::new();
    for (n, q, o) in solve_all(cfg, &[1.into(), 2.into(), 3.into()])? {
        let min_samples = (8.0 * o.m_plus).ceil() as usize + 1;
        let samples = cfg.wave.samples.unwrap_or(min_samples.max(4097));
        let delta = cfg.wave.delta_scale * o.r;
        let c = orbit_wave_curve(&o, cfg.wave.u0, delta, samples)?;
        if c.undersampled {
            p.warnings.push(format!(
                "n = {}: {samples} samples is fewer than 8 m+ = {}; the total-field curve is undersampled",
                label(&n),
                8.0 * o.m_plus
            ));
        }
        for k in 0..samples {
            p.push(vec![
                o.n.into(),
                c.phi[k].into(),
                c.total[k][0].into(),
                c.total[k][1].into(),
                c.phase_wave[k][0].into(),
                c.phase_wave[k][1].into(),
                c.circle[k][0].into(),
                c.circle[k][1].into(),
            ]);
        }
        // expected counts when n/b and N/b are integers
        let k1 = &q / &rp.b_exact;
        let k2 = &q * &q / (&rp.alpha_exact * &rp.b_exact);
        let expected = (k1.is_integer() && k2.is_integer()).then(|| {
            let (a, b) = (k1.to_integer(), k2.to_integer());
            json!({
                "phase_wave": 2 * a.to_i64().unwrap_or(0),
                "envelope": 2 * b.to_i64().unwrap_or(0),
                "total": product_sign_changes(&a, &b),
            })
        });
        per_n.insert(
            label(&n),
            json!({
                "r_n": o.r,
                "delta": delta,
                "u0": cfg.wave.u0,
                "samples": samples,
                "undersampled": c.undersampled,
                "closure_gap": c.closure_gap,
                "sign_changes": {
                    "total": c.total_sign_changes,
                    "phase_wave": c.phase_wave_sign_changes,
                    "envelope": c.envelope_zero_crossings,
                },
                "expected_sign_changes": expected,
            }),
        );
    }
    p.meta("curves", per_n);
    p.meta("presentation_only", "delta and u0 only scale the drawing");
    Ok(Outcome::ok(ResultEnvelope::new("orbit-wave", cfg, p)))
}

/// |u|² on a grid around the orbit, one block of rows per n.
pub fn cmd_field_map(cfg: &RunConfig) -> Result<Outcome> {
    let second = match cfg.map.plane {
        Plane::Equatorial => "y",
        Plane::Meridian => "z",
    };
    let mut p = Payload::new(&["n", "x", second, "intensity"]);
    let mut per_n = serde_json::Map::new();
    for (n, _, o) in solve_all(cfg, &[1.into()])? {
        let pair = MatchedPair::for_orbit(&o, cfg.map.u0)?;
        let extent = cfg.map.extent.unwrap_or_else(|| default_extent(&o));
        let m = intensity_map(&o, &pair, cfg.map.plane, extent, cfg.map.grid_n)?;
        for j in 0..m.grid_n {
            for i in 0..m.grid_n {
                p.push(vec![
                    o.n.into(),
                    m.coord(i).into(),
                    m.coord(j).into(),
                    m.value(i, j).into(),
                ]);
            }
        }
        let top = m.argmax();
        let radial = m.radial_argmax();
        let r_n = o.r / o.a0;
        per_n.insert(
            label(&n),
            json!({
                "r_n_over_a0": r_n,
                "extent": extent,
                "cell": m.cell,
                "argmax": { "x": top.u, second: top.v, "value": top.value, "radius": top.u.hypot(top.v) },
                "radial_argmax": radial,
                "radial_argmax_within_one_cell": (radial - r_n).abs() <= m.cell,
                "maxima": m.local_maxima(0.5).iter()
                    .map(|pk| json!({ "x": pk.u, second: pk.v, "value": pk.value }))
                    .collect::<Vec<_>>(),
            }),
        );
    }
    p.meta("maps", per_n);
    p.meta("plane", cfg.map.plane);
    Ok(Outcome::ok(ResultEnvelope::new("field-map", cfg, p)))
}

fn trajectory_rows(p: &mut Payload, n: f64, states: &[TrajectoryState]) {
    for s in states {
        p.push(vec![
            n.into(),
            s.t.into(),
            s.pos[0].into(),
            s.pos[1].into(),
            s.pos[2].into(),
            s.tau.into(),
            s.z_phase.into(),
            s.action.into(),
        ]);
    }
}

/// Integrate circular orbits and report drift, action and constraint residuals.
pub fn cmd_integrate(cfg: &RunConfig) -> Result<Outcome> {
    let ic = &cfg.integrate;
    let mut p = Payload::new(&["n", "t", "x", "y", "z", "tau", "z_phase", "action"]);
    let mut per_n = serde_json::Map::new();
    let mut failure = None;
    for (n, _, o) in solve_all(cfg, &[1.into()])? {
        let motion = MotionParams::from_orbit(&o).with_omega_p(o.omega_p * ic.omega_p_scale);
        let init = circular_initials(&o);
        let period = o.period();
        if ic.periods == 0.0 {
            trajectory_rows(&mut p, o.n, &[init]);
            per_n.insert(label(&n), json!({ "period": period, "states": 1 }));
            continue;
        }
        let opts = IntegrationOptions::new(ic.tol).sampled(period / ic.samples_per_period as f64);
        let states = match integrate_orbit_with(
            &motion,
            &GeneralForceSpec::transparent(),
            None,
            &init,
            ic.periods * period,
            &opts,
        ) {
            Ok(s) => s,
            Err(Error::IntegrationFailure { t, reason, partial }) => {
                trajectory_rows(&mut p, o.n, &partial);
                p.warnings
                    .push(format!("n = {}: integration stopped at t = {t}: {reason}", label(&n)));
                failure = Some(Failure::Numerical(Error::IntegrationFailure { t, reason, partial }));
                break;
            }
            Err(e) => return Err(e),
        };
        trajectory_rows(&mut p, o.n, &states);
        let cons = conservation_report(&motion, &states)?;
        let cr = constraint_residual(&states, &o, ic.u0)?;
        let slope = phase_drift_rate(&states, &o, ic.u0)?;
        let last = states.last().expect("non-empty");
        per_n.insert(
            label(&n),
            json!({
                "period": period,
                "states": states.len(),
                "radius_deviation": cons.radius_deviation,
                "energy_drift": cons.energy_drift,
                "angular_momentum_drift": cons.angular_momentum_drift,
                "action_over_2pi_per_period": last.action / (2.0 * PI * ic.periods),
                "constraint_max_abs": cr.max_abs,
                "constraint_max_phase": cr.max_phase,
                "phase_residual_slope": slope,
                "predicted_phase_residual_slope": -(ic.omega_p_scale - 1.0) * o.omega_p * o.inverse_gamma(),
                "omega_p": motion.omega_p,
            }),
        );
    }
    p.meta("summary", per_n);
    let envelope = ResultEnvelope::new("integrate", cfg, p);
    Ok(Outcome { envelope, failure })
}

/// The invariant suite as a report table.
pub fn cmd_check(cfg: &RunConfig) -> Result<Outcome> {
    let items = run_checks(cfg)?;
    let mut p = Payload::new(&["identity", "measured", "threshold", "status", "detail"]);
    let mut failed = 0;
    for it in &items {
        if it.status == super::check::Status::Fail {
            failed += 1;
        }
        p.push(vec![
            it.identity.as_str().into(),
            it.measured.into(),
            it.threshold.into(),
            it.status.as_str().into(),
            it.detail.as_str().into(),
        ]);
    }
    p.meta("failed", failed);
    p.meta("total", items.len());
    let envelope = ResultEnvelope::new("check", cfg, p);
    Ok(Outcome {
        envelope,
        failure: (failed > 0).then_some(Failure::Checks { failed }),
    })
}
