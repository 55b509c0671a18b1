//! Polar curves of the field and of the phase wave around the first orbits.

use pilotwave::quantization::{solve_orbit, PhysicalParams};
use pilotwave::wavefield::orbit_wave_curve;

pub fn run_example() -> pilotwave::Result<()> {
    let params = PhysicalParams::new(1.0 / 3.0, 1.0)?;
    for n in 1..=3 {
        let o = solve_orbit(&params, n as f64)?;
        let c = orbit_wave_curve(&o, 1.0, 0.15 * o.r, 4097)?;
        println!(
            "n = {n}: sign changes total {}, phase wave {}, envelope {}; closure gap {:.1e}",
            c.total_sign_changes, c.phase_wave_sign_changes, c.envelope_zero_crossings, c.closure_gap
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
