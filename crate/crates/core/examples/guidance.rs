//! The velocity read off the field phase is the orbital speed alpha/n.

use std::f64::consts::FRAC_PI_2;

use pilotwave::dynamics::{bohmian_velocity, bohmian_velocity_fd};
use pilotwave::quantization::{solve_orbit, PhysicalParams};
use pilotwave::wavefield::{MatchedPair, SpacetimePoint};

pub fn run_example() -> pilotwave::Result<()> {
    let params = PhysicalParams::new(1.0 / 3.0, 1.0)?;
    for n in 1..=3 {
        let o = solve_orbit(&params, n as f64)?;
        let pair = MatchedPair::for_orbit(&o, 1.0)?;
        let t = 0.25;
        let p = SpacetimePoint {
            t,
            r: o.r,
            theta: FRAC_PI_2,
            phi: o.v * t / o.r,
        };
        let v = bohmian_velocity(&o, p)?;
        let fd = bohmian_velocity_fd(|t, r, th, ph| pair.eval(t, r, th, ph), o.b, o.alpha, p, 1e-5 * o.r)?;
        println!(
            "n = {n}: alpha/n = {:.12}, from phase {:.12}, by finite differences {:.12}",
            o.v,
            v[0].hypot(v[1]),
            fd[0].hypot(fd[1])
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
