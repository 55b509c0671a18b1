//! Two matched modes add up to a carrier times a standing envelope on the orbit.

use std::f64::consts::{FRAC_PI_2, PI};

use pilotwave::quantization::{solve_orbit, PhysicalParams};
use pilotwave::wavefield::{dispersion_shifts, field_on_orbit, group_velocity, MatchedPair};

pub fn run_example() -> pilotwave::Result<()> {
    let params = PhysicalParams::new(1.0 / 3.0, 1.0)?;
    for n in 1..=3 {
        let o = solve_orbit(&params, n as f64)?;
        let pair = MatchedPair::for_orbit(&o, 1.0)?;
        let mut worst: f64 = 0.0;
        for k in 0..64 {
            let phi = 2.0 * PI * k as f64 / 64.0;
            let t = 0.1 * k as f64;
            let u = pair.eval(t, o.r, FRAC_PI_2, phi)?;
            worst = worst.max((u - field_on_orbit(&o, 1.0, t, phi).value).norm());
        }
        let (ep, em) = dispersion_shifts(&o);
        println!(
            "n = {n}: l = ({}, {}), mode sum vs closed form {worst:.1e}, shifts ({ep:.6}, {em:.6}), group velocity {:.12} (v = {:.12})",
            pair.plus.l,
            pair.minus.l,
            group_velocity(&o),
            o.v
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
