//! |u|^2 on the equatorial and meridian planes for the alpha = beta = 1/3 orbit.

use pilotwave::quantization::{solve_orbit, PhysicalParams};
use pilotwave::wavefield::{default_extent, intensity_map, MatchedPair, Plane};

pub fn run_example() -> pilotwave::Result<()> {
    let params = PhysicalParams::new(1.0 / 3.0, 1.0)?;
    for n in 1..=3 {
        let o = solve_orbit(&params, n as f64)?;
        let pair = MatchedPair::for_orbit(&o, 1.0)?;
        let map = intensity_map(&o, &pair, Plane::Equatorial, default_extent(&o), 128)?;
        println!(
            "n = {n}: r_n = {:.4} a0, radial peak at {:.4} a0 (cell {:.4})",
            o.r / o.a0,
            map.radial_argmax(),
            map.cell
        );
    }
    let o = solve_orbit(&params, 1.0)?;
    let pair = MatchedPair::for_orbit(&o, 1.0)?;
    let side = intensity_map(&o, &pair, Plane::Meridian, default_extent(&o), 128)?;
    for p in side.local_maxima(0.5) {
        println!(
            "meridian maximum at (x, z) = ({:.4}, {:.4}), |u|^2 = {:.4}",
            p.u, p.v, p.value
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
