mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::{cplx, crel, num, reference, rel};
use pilotwave::quantization::{solve_orbit, OrbitSolution, PhysicalParams};
use pilotwave::wavefield::*;
use pilotwave::Error;
use proptest::prelude::*;

const THIRD: f64 = 1.0 / 3.0;

fn fig_orbit(n: f64) -> OrbitSolution {
    solve_orbit(&PhysicalParams::new(THIRD, 1.0).unwrap(), n).unwrap()
}

fn coulomb(l: u32, m: u32, omega: f64, beta: f64) -> Mode {
    Mode::new(Sign::Plus, l, m, omega, Regime::Coulomb { beta }).unwrap()
}

#[test]
fn effective_order_matches_reference() {
    for e in reference()["effective_order"].as_array().unwrap() {
        let l = e["l"].as_u64().unwrap() as u32;
        let got = effective_order(l, num(&e["beta"])).unwrap();
        assert!(rel(got, num(&e["value"])) < 1e-14, "l' for l = {l}: {got}");
    }
}

#[test]
fn coulomb_radial_matches_reference() {
    for e in reference()["coulomb_radial"].as_array().unwrap() {
        let l = e["l"].as_u64().unwrap() as u32;
        let mode = coulomb(l, 0, num(&e["omega"]), num(&e["beta"]));
        let got = radial(&mode, num(&e["r"])).unwrap();
        assert!(crel(got, cplx(&e["value"])) < 1e-12, "R_{l} = {got}");
    }
}

#[test]
fn matched_pair_matches_reference() {
    let o = fig_orbit(1.0);
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    for e in reference()["fig1_pair"].as_array().unwrap() {
        let (t, k, th, ph) = (num(&e["t"]), num(&e["r_over_rn"]), num(&e["theta"]), num(&e["phi"]));
        let want = cplx(&e["value"]);
        let a = pair.eval(t, k * o.r, th, ph).unwrap();
        let b = pair.eval_direct(t, k * o.r, th, ph).unwrap();
        assert!((a - want).norm() < 1e-12, "eval at {e}: {a} vs {want}");
        assert!((b - want).norm() < 1e-12, "eval_direct at {e}: {b} vs {want}");
    }
}

#[test]
fn amplitudes_are_finite_and_nonzero() {
    let o = fig_orbit(1.0);
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    for m in [&pair.plus, &pair.minus] {
        assert!(m.amplitude.norm().is_finite() && m.amplitude.norm() > 0.0);
        assert!(radial(m, o.r).unwrap().norm() > 0.0);
    }
}

#[test]
fn chargeless_is_the_zero_charge_limit() {
    for l in 0..=10 {
        for &x in &[0.3, 1.0, 7.0, 23.0, 50.0] {
            let c = Mode::new(Sign::Plus, l, 0, 1.0, Regime::Chargeless).unwrap();
            let k = coulomb(l, 0, 1.0, 0.0);
            let (rc, rk) = (radial(&c, x).unwrap(), radial(&k, x).unwrap());
            // relative to the local envelope, so zeros of j_l do not dominate
            let env = radial_asymptotic(&c, x).unwrap().norm().max(rc.norm());
            let scale = env.min(x.powi(l as i32)).max(rc.norm());
            assert!((rc - rk).norm() <= 1e-10 * scale, "l={l} x={x}: {rc} vs {rk}");
        }
    }
}

#[test]
fn asymptotic_form_at_large_radius() {
    let mode = coulomb(1, 0, 1.0, THIRD);
    let r = 1000.0;
    let full = radial(&mode, r).unwrap();
    let asy = radial_asymptotic(&mode, r).unwrap();
    assert!(crel(full, asy) < 1e-2);
    let n = asymptotic_normalization(&mode).unwrap();
    assert!(n.norm().is_finite() && n.norm() > 0.0);
    assert!(coulomb_phase(&mode).unwrap().is_finite());
}

#[test]
fn asymptotic_error_decreases_per_decade() {
    for l in 0..=4 {
        let mode = coulomb(l, 0, 1.0, THIRD);
        let d: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&rho| asymptotic_deviation(&mode, rho, 64).unwrap())
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2], "l={l}: {d:?}");
        assert!(d[1] < 1e-2, "l={l}: {d:?}");
    }
}

#[test]
fn radial_ode_is_satisfied() {
    for (l, beta, omega, r) in [
        (0, 0.0, 1.0, 2.0),
        (3, THIRD, 1.3, 4.0),
        (20, 0.2, 2.0, 15.0),
        (2, 0.0, 0.7, 30.0),
    ] {
        let regime = Regime::from_constants(beta, 0.0);
        let mode = Mode::new(Sign::Plus, l, 0, omega, regime).unwrap();
        let h = 1e-3 / omega.max(l as f64 / r);
        let res = radial_ode_residual(&mode, r, h).unwrap();
        assert!(res < 1e-6, "l={l} beta={beta}: {res:e}");
    }
    let kg = Mode::new(Sign::Minus, 2, 2, 1.5, Regime::KleinGordon { beta: 0.2, omega0: 0.5 }).unwrap();
    assert!(radial_ode_residual(&kg, 3.0, 3e-3).unwrap() < 1e-6);
}

#[test]
fn quantum_potential_at_general_point() {
    for (l, m, beta, omega, r, theta) in [
        (4, 4, THIRD, 1.3, 2.5, 1.3),
        (2, 1, 0.2, 0.8, 4.0, 0.9),
        (3, 3, 0.0, 1.0, 1.7, 1.5),
    ] {
        let mode = Mode::new(Sign::Plus, l, m, omega, Regime::from_constants(beta, 0.0)).unwrap();
        let closed = quantum_potential_closed_form(&mode, r, theta);
        let h = 1e-4 * r;
        let q = quantum_potential(&mode, r, theta, 0.3, h).unwrap();
        let q2 = quantum_potential(&mode, r, theta, 0.3, h / 2.0).unwrap();
        let rich = (4.0 * q2 - q) / 3.0;
        let scale = (m as f64 / (r * theta.sin())).powi(2).max(omega * omega);
        assert!((rich - closed).abs() < 1e-6 * scale, "l={l}: {rich} vs {closed}");
    }
}

#[test]
fn quantum_potential_vanishes_on_orbit() {
    for n in [1.0, 2.0, 3.0] {
        let o = fig_orbit(n);
        for sign in [Sign::Plus, Sign::Minus] {
            let mode = Mode::from_orbit(&o, sign, None).unwrap();
            let m = mode.m as f64;
            assert!(quantum_potential_on_orbit(&o, m).abs() < 1e-12 * (m / o.r).powi(2));
            let q = quantum_potential(&mode, o.r, FRAC_PI_2, 0.0, 1e-4 * o.r).unwrap();
            assert!(q.abs() < 1e-4 * (m / o.r).powi(2), "n={n} {sign:?}: {q:e}");
        }
    }
}

#[test]
fn current_divergence_converges() {
    let mode = coulomb(3, 2, 1.1, THIRD);
    let (r, th, ph) = (2.3, 1.1, 0.4);
    let d1 = current_divergence(&mode, r, th, ph, 1e-2 * r).unwrap();
    let d2 = current_divergence(&mode, r, th, ph, 5e-3 * r).unwrap();
    let f2 = radial(&mode, r).unwrap().norm_sqr() * mode.angular(th).unwrap().powi(2);
    // second order: halving h divides the error by four
    assert!(d2.abs() < 0.3 * d1.abs() || d2.abs() < 1e-9 * f2, "{d1:e} -> {d2:e}");

    let free = Mode::new(Sign::Plus, 0, 0, 1.0, Regime::Chargeless).unwrap();
    let r = 2.0;
    assert!(current_divergence(&free, r, 1.0, 0.0, 1e-3 * r).unwrap().abs() < 1e-6);
}

#[test]
fn pair_satisfies_field_equation() {
    let o = fig_orbit(1.0);
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    let p = SpacetimePoint {
        t: 0.3,
        r: 1.2 * o.r,
        theta: 1.3,
        phi: 0.5,
    };
    let scale = o.k_plus * o.k_plus;
    let e1 = pair_field_residual(&pair, p, 1e-2).unwrap().norm();
    let e2 = pair_field_residual(&pair, p, 5e-3).unwrap().norm();
    assert!(e1 < 1e-3 * scale, "{e1:e}");
    assert!(e2 < 0.3 * e1, "no h^2 convergence: {e1:e} -> {e2:e}");
}

#[test]
fn wavevector_from_phase_gradient() {
    let o = fig_orbit(2.0);
    for sign in [Sign::Plus, Sign::Minus] {
        let mode = Mode::from_orbit(&o, sign, None).unwrap();
        for (r, th) in [(o.r, FRAC_PI_2), (0.7 * o.r, 1.0), (1.5 * o.r, 2.0)] {
            let k = phase_gradient_wavevector(&mode, r, th, 0.2, 1e-6 * r).unwrap();
            let want = mode.signed_m() as f64 / (r * th.sin());
            assert!(rel(k, want) < 1e-8, "{sign:?} at r={r}: {k} vs {want}");
        }
    }
}

#[test]
fn group_velocity_and_shifts() {
    for n in 1..=10 {
        let o = solve_orbit(&PhysicalParams::hydrogen(), n as f64).unwrap();
        assert!(rel(group_velocity(&o), o.v) < 1e-12);
        let (sp, sm) = dispersion_shifts(&o);
        assert!((sp - o.epsilon).abs() < 1e-12 * o.k_plus);
        assert!((sm - o.epsilon).abs() < 1e-12 * o.k_plus);
    }
}

#[test]
fn field_on_orbit_equals_mode_sum() {
    for n in [1.0, 2.0, 3.0] {
        let o = fig_orbit(n);
        let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
        let cycle = 2.0 * PI / o.omega_plus;
        for k in 0..256 {
            let t = cycle * k as f64 / 256.0;
            let phi = 2.0 * PI * ((k * 37) % 256) as f64 / 256.0;
            let u = pair.eval(t, o.r, FRAC_PI_2, phi).unwrap();
            let c = field_on_orbit(&o, 1.0, t, phi).value;
            assert!((u - c).norm() < 1e-10, "n={n} k={k}: {u} vs {c}");
        }
    }
}

#[test]
fn hydrogen_pair_is_usable_at_large_orders() {
    let o = solve_orbit(&PhysicalParams::hydrogen(), 3.0).unwrap();
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    let u = pair.eval(0.0, o.r, FRAC_PI_2, 0.0).unwrap();
    assert!((u - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-10);
    let off = pair.eval(0.0, 1.01 * o.r, FRAC_PI_2, 0.0).unwrap();
    assert!(off.norm().is_finite());
    assert!(radial_ratio(&pair.plus, 1.01 * o.r, o.r).unwrap().norm().is_finite());
}

#[test]
fn mode_construction_errors() {
    assert!(matches!(
        Mode::new(Sign::Plus, 1, 0, 1.0, Regime::Coulomb { beta: 2.0 }),
        Err(Error::SupercriticalCharge { .. })
    ));
    assert!(matches!(
        Mode::new(Sign::Plus, 1, 0, 0.5, Regime::KleinGordon { beta: 0.1, omega0: 1.0 }),
        Err(Error::Evanescent { .. })
    ));
    assert!(Mode::new(Sign::Plus, 1, 2, 1.0, Regime::Chargeless).is_err());
    assert!(Mode::new(Sign::Plus, 1, 0, -1.0, Regime::Chargeless).is_err());
    assert!(matches!(integer_mode(2.5), Err(Error::NonIntegerMode { .. })));
    assert_eq!(integer_mode(4.0 + 1e-12).unwrap(), 4);

    let o = fig_orbit(1.0);
    let plus = Mode::from_orbit(&o, Sign::Plus, Some(5)).unwrap();
    let minus = Mode::from_orbit(&o, Sign::Minus, None).unwrap();
    assert!(matches!(
        match_amplitudes(&o, (plus, minus), 1.0),
        Err(Error::UnmatchedParity { .. })
    ));
    let plus = Mode::from_orbit(&o, Sign::Plus, Some(6)).unwrap();
    assert!(match_amplitudes(&o, (plus, minus), 1.0).is_ok());
    assert!(match_amplitudes(&o, (minus, plus), 1.0).is_err());
    assert!(match_amplitudes(&o, (plus, minus), 0.0).is_err());
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    assert!(pair.eval(0.0, o.r, 4.0, 0.0).is_err());
}

#[test]
fn intensity_maps() {
    let o = fig_orbit(1.0);
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    let ext = default_extent(&o);
    assert!(matches!(
        intensity_map(&o, &pair, Plane::Equatorial, ext, MIN_GRID - 1),
        Err(Error::InvalidParameter { .. })
    ));
    assert!(intensity_map(&o, &pair, Plane::Equatorial, ext, MIN_GRID).is_ok());
    assert!(intensity_map(&o, &pair, Plane::Equatorial, -1.0, 64).is_err());

    // the meridian section is symmetric under x → −x and z → −z
    let map = intensity_map(&o, &pair, Plane::Meridian, ext, 64).unwrap();
    for j in 0..64 {
        for i in 0..64 {
            let v = map.value(i, j);
            assert!((v - map.value(63 - i, j)).abs() <= 1e-12 * v.max(1e-300));
            assert!((v - map.value(i, 63 - j)).abs() <= 1e-12 * v.max(1e-300));
        }
    }
    let top = map.argmax();
    assert!(top.v.abs() < map.cell);
}

#[test]
fn radial_peak_matches_reference() {
    for e in reference()["fig_radial_peaks"].as_array().unwrap() {
        let n = num(&e["n"]);
        let o = fig_orbit(n);
        assert!(rel(o.r / o.a0, num(&e["r_n_over_a0"])) < 1e-14);
        let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
        let map = intensity_map(&o, &pair, Plane::Equatorial, default_extent(&o), 256).unwrap();
        let peak = num(&e["radial_peak_over_a0"]);
        let got = map.radial_argmax();
        // annular means over Cartesian cells keep a residue of the
        // (m+ + m-)-fold interference term, worth about one cell of shift
        assert!(
            (got - peak).abs() <= 2.0 * map.cell,
            "n={n}: annulus peak {got} vs continuous {peak}"
        );
    }
}

#[test]
fn maps_do_not_depend_on_thread_count() {
    let o = fig_orbit(2.0);
    let pair = MatchedPair::for_orbit(&o, 1.0).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| intensity_map(&o, &pair, Plane::Equatorial, default_extent(&o), 48).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a.values.len(), b.values.len());
    assert!(a.values.iter().zip(&b.values).all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn orbit_wave_counts() {
    for n in [1.0, 2.0, 3.0] {
        let o = fig_orbit(n);
        let c = orbit_wave_curve(&o, 1.0, 0.1 * o.r, 4097).unwrap();
        assert_eq!(c.phase_wave_sign_changes, (2.0 * n / o.b) as usize);
        assert_eq!(c.envelope_zero_crossings, (2.0 * o.big_n / o.b) as usize);
        assert!(!c.undersampled);
        assert!(c.closure_gap < 1e-9 * o.r);
        assert_eq!(c.total.len(), 4097);
    }
    assert_eq!(cyclic_sign_changes(&[1.0, -1.0, 1.0, -1.0, 1.0]), 4);
    assert_eq!(cyclic_sign_changes(&[1.0, 0.0, 2.0, 1.0]), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radial_ode_random(l in 0u32..25, beta in 0.0f64..0.45, omega in 0.2f64..3.0, x in 0.5f64..40.0) {
        let mode = coulomb(l, 0, omega, beta);
        let r = x / omega;
        let h = 1e-3 / omega.max(l as f64 / r);
        let res = radial_ode_residual(&mode, r, h).unwrap();
        prop_assert!(res < 1e-6, "residual {:e}", res);
    }

    #[test]
    fn orbit_field_modulus_is_bounded(t in -50.0f64..50.0, phi in 0.0f64..(2.0 * PI), u0 in 0.1f64..10.0) {
        let o = fig_orbit(2.0);
        let s = field_on_orbit(&o, u0, t, phi);
        prop_assert!(s.value.norm() <= u0 * (1.0 + 1e-15));
        prop_assert!((s.value.norm() - u0 * s.envelope.abs()).abs() < 1e-12 * u0);
    }
}
