mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::rel;
use num_complex::Complex64;
use pilotwave::dynamics::*;
use pilotwave::quantization::{solve_orbit, OrbitSolution, PhysicalParams};
use pilotwave::wavefield::{MatchedPair, SpacetimePoint};
use pilotwave::Error;
use proptest::prelude::*;

fn hydrogen(n: f64) -> OrbitSolution {
    solve_orbit(&PhysicalParams::hydrogen(), n).unwrap()
}

fn run(o: &OrbitSolution, periods: f64, tol: f64) -> Vec<TrajectoryState> {
    let motion = MotionParams::from_orbit(o);
    integrate_orbit(&motion, &circular_initials(o), periods * o.period(), tol).unwrap()
}

#[test]
fn circular_orbit_is_a_fixed_point() {
    let o = hydrogen(1.0);
    let traj = run(&o, 100.0, 1e-12);
    let rep = conservation_report(&MotionParams::from_orbit(&o), &traj).unwrap();
    assert!(rep.radius_deviation < 1e-6, "{rep:?}");
    assert!(rep.energy_drift < 1e-9, "{rep:?}");
    assert!(rep.angular_momentum_drift < 1e-9, "{rep:?}");
    let last = traj.last().unwrap();
    assert!(
        rel(last.action / (2.0 * PI * 100.0), o.n) < 1e-8,
        "action {}",
        last.action
    );
}

#[test]
fn clock_runs_slow_by_the_lorentz_factor() {
    for n in [1.0, 2.0] {
        let o = solve_orbit(&PhysicalParams::new(1.0 / 3.0, 1.0).unwrap(), n).unwrap();
        let traj = run(&o, 1.0, 1e-12);
        let last = traj.last().unwrap();
        assert!(rel(last.t, o.period()) < 1e-14);
        assert!(rel(last.tau, o.period() * o.inverse_gamma()) < 1e-10);
    }
}

#[test]
fn time_reversal() {
    let o = solve_orbit(&PhysicalParams::new(0.2, 1.0).unwrap(), 1.0).unwrap();
    let motion = MotionParams::from_orbit(&o);
    // an eccentric start exercises the radial motion too
    let mut start = circular_initials(&o);
    start.vel[1] *= 1.1;
    start.vel[0] = 0.01;
    let t = 3.0 * o.period();
    let fwd = integrate_orbit(&motion, &start, t, 1e-13).unwrap();
    let mid = *fwd.last().unwrap();
    let back = integrate_orbit(&motion, &mid, -t, 1e-13).unwrap();
    let end = back.last().unwrap();
    let scale = start.radius();
    for i in 0..3 {
        assert!(
            (end.pos[i] - start.pos[i]).abs() < 1e-8 * scale,
            "pos {i}: {:?} vs {:?}",
            end.pos,
            start.pos
        );
        assert!((end.vel[i] - start.vel[i]).abs() < 1e-8 * start.speed());
    }
    assert!(end.t.abs() < 1e-9 * t);
    assert!(end.tau.abs() < 1e-8 * t);
}

#[test]
fn perturbed_orbit_stays_bounded() {
    let o = hydrogen(1.0);
    let motion = MotionParams::from_orbit(&o);
    let mut start = circular_initials(&o);
    start.pos[0] *= 1.01;
    let opts = IntegrationOptions::new(1e-11).sampled(o.period() / 64.0);
    let traj = integrate_orbit_with(
        &motion,
        &GeneralForceSpec::transparent(),
        None,
        &start,
        100.0 * o.period(),
        &opts,
    )
    .unwrap();
    let radii: Vec<f64> = traj.iter().map(TrajectoryState::radius).collect();
    let (lo, hi) = radii
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi / lo < 1.1, "oscillation {lo}..{hi}");
    let half = radii.len() / 2;
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    let (m1, m2) = (mean(&radii[..half]), mean(&radii[half..]));
    assert!(rel(m2, m1) < 1e-3, "mean radius drifted {m1} -> {m2}");
    let rep = conservation_report(&motion, &traj).unwrap();
    assert!(rep.energy_drift < 1e-8 && rep.angular_momentum_drift < 1e-8);
}

#[test]
fn constraint_holds_under_phase_harmony() {
    for o in [
        hydrogen(1.0),
        solve_orbit(&PhysicalParams::new(1.0 / 3.0, 1.0).unwrap(), 2.0).unwrap(),
    ] {
        let motion = MotionParams::from_orbit(&o);
        let opts = IntegrationOptions::new(1e-12).sampled(o.period() / 64.0);
        let traj = integrate_orbit_with(
            &motion,
            &GeneralForceSpec::transparent(),
            None,
            &circular_initials(&o),
            10.0 * o.period(),
            &opts,
        )
        .unwrap();
        let res = constraint_residual(&traj, &o, 1.0).unwrap();
        assert!(res.max_abs < 1e-8 && res.max_phase < 1e-8, "n={} {res:?}", o.n);
        assert!(phase_drift_rate(&traj, &o, 1.0).unwrap().abs() < 1e-10 * o.omega_p);
    }
}

#[test]
fn detuned_clock_drifts_linearly() {
    let o = hydrogen(1.0);
    for kappa in [1.01, 0.98] {
        let motion = MotionParams::from_orbit(&o).with_omega_p(kappa * o.omega_p);
        let opts = IntegrationOptions::new(1e-12).sampled(o.period() / 64.0);
        let traj = integrate_orbit_with(
            &motion,
            &GeneralForceSpec::transparent(),
            None,
            &circular_initials(&o),
            5.0 * o.period(),
            &opts,
        )
        .unwrap();
        let slope = phase_drift_rate(&traj, &o, 1.0).unwrap();
        let want = -(kappa - 1.0) * o.omega_p * o.inverse_gamma();
        assert!(rel(slope, want) < 1e-6, "kappa {kappa}: {slope} vs {want}");
        assert!(constraint_residual(&traj, &o, 1.0).unwrap().max_phase > 1e-3);
    }
}

#[test]
fn guidance_velocity() {
    for n in [1.0, 2.0, 3.0] {
        let o = solve_orbit(&PhysicalParams::new(1.0 / 3.0, 1.0).unwrap(), n).unwrap();
        let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
        let cycle = 2.0 * PI / o.omega_plus;
        for k in 0..8 {
            let t = cycle * k as f64 / 8.0;
            let p = SpacetimePoint {
                t,
                r: o.r,
                theta: FRAC_PI_2,
                phi: o.v * t / o.r,
            };
            let analytic = bohmian_velocity(&o, p).unwrap();
            let speed = analytic[0].hypot(analytic[1]);
            assert!(rel(speed, o.alpha / n) < 1e-10);
            let fd = bohmian_velocity_fd(|t, r, th, ph| pair.eval(t, r, th, ph), o.b, o.alpha, p, 1e-5 * o.r).unwrap();
            for i in 0..3 {
                assert!(
                    (fd[i] - analytic[i]).abs() < 1e-6 * o.v,
                    "n={n} k={k}: {fd:?} vs {analytic:?}"
                );
            }
        }
    }
}

#[test]
fn guidance_errors() {
    let o = hydrogen(1.0);
    let axis = SpacetimePoint {
        t: 0.0,
        r: o.r,
        theta: 0.0,
        phi: 0.0,
    };
    assert!(bohmian_velocity(&o, axis).is_err());
    let p = SpacetimePoint {
        theta: FRAC_PI_2,
        ..axis
    };
    let flat = |_: f64, _: f64, _: f64, _: f64| Ok(Complex64::new(1.0, 0.0));
    assert!(matches!(
        bohmian_velocity_fd(flat, 1.0, 0.0, p, 1e-3),
        Err(Error::GuidanceSingularity { .. })
    ));
    assert!(bohmian_velocity_fd(flat, 1.0, 0.1, p, 2.0 * o.r).is_err());
}

#[test]
fn reaction_force_hook() {
    let o = hydrogen(1.0);
    let motion = MotionParams::from_orbit(&o);
    let start = circular_initials(&o);
    let opts = IntegrationOptions::new(1e-12);
    let plain = integrate_orbit(&motion, &start, o.period(), 1e-12).unwrap();
    let zero = GeneralForceSpec::new(|_| Complex64::new(0.0, 0.0));
    let grad = |_: &TrajectoryState| [Complex64::new(1.0, 0.0); 3];
    let hooked = integrate_orbit_with(&motion, &zero, Some(&grad), &start, o.period(), &opts).unwrap();
    assert_eq!(plain.last().unwrap().pos, hooked.last().unwrap().pos);
    assert!(matches!(
        integrate_orbit_with(&motion, &zero, None, &start, o.period(), &opts),
        Err(Error::Usage(_))
    ));

    // a constant push along x changes the orbit
    let push = GeneralForceSpec::new(|_| Complex64::new(-1e-6, 0.0));
    let pushed = integrate_orbit_with(&motion, &push, Some(&grad), &start, o.period(), &opts).unwrap();
    assert_ne!(plain.last().unwrap().pos, pushed.last().unwrap().pos);
}

#[test]
fn infall_reports_partial_trajectory() {
    let o = hydrogen(1.0);
    let motion = MotionParams::from_orbit(&o).with_cutoff(1e-3 * o.r);
    let mut start = circular_initials(&o);
    start.vel = [0.0; 3];
    match integrate_orbit(&motion, &start, 10.0 * o.period(), 1e-10) {
        Err(Error::IntegrationFailure { partial, .. }) => {
            assert!(!partial.is_empty());
            assert!(partial.last().unwrap().radius() < start.radius());
        }
        Err(Error::Singularity { .. }) => {}
        other => panic!("expected a failure, got {:?}", other.map(|v| v.len())),
    }
}

#[test]
fn invalid_integration_inputs() {
    let o = hydrogen(1.0);
    let motion = MotionParams::from_orbit(&o);
    let start = circular_initials(&o);
    assert!(integrate_orbit(&motion, &start, 1.0, 0.0).is_err());
    assert!(integrate_orbit(&motion, &start, f64::NAN, 1e-9).is_err());
    let mut fast = start;
    fast.vel = [0.0, 1.0, 0.0];
    assert!(integrate_orbit(&motion, &fast, 1.0, 1e-9).is_err());
    let bad = MotionParams { m_eff: -1.0, ..motion };
    assert!(integrate_orbit(&bad, &start, 1.0, 1e-9).is_err());
    assert!(conservation_report(&motion, &[]).is_err());
    let mut off = start;
    off.pos[0] *= 2.0;
    assert!(constraint_residual(&[off], &o, 1.0).is_err());
}

#[test]
fn integration_is_deterministic() {
    let o = hydrogen(2.0);
    let a = run(&o, 2.0, 1e-11);
    let b = run(&o, 2.0, 1e-11);
    assert_eq!(a, b);
}

#[test]
fn effective_mass_formula() {
    assert!(rel(effective_mass(1.0, 2.0, 0.5, 0.3).unwrap(), 1.045) < 1e-15);
    assert!(effective_mass(1.0, -2.0, 0.5, 0.3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn conserved_over_a_few_periods(alpha in 0.01f64..0.4, n in 1u32..4, kick in -0.05f64..0.05) {
        let o = solve_orbit(&PhysicalParams::new(alpha, 1.0).unwrap(), n as f64).unwrap();
        let motion = MotionParams::from_orbit(&o);
        let mut start = circular_initials(&o);
        start.vel[1] *= 1.0 + kick;
        let traj = integrate_orbit(&motion, &start, 3.0 * o.period(), 1e-12).unwrap();
        let rep = conservation_report(&motion, &traj).unwrap();
        prop_assert!(rep.energy_drift < 1e-9 && rep.angular_momentum_drift < 1e-9, "{:?}", rep);
    }
}
