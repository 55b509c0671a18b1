//! The quantum potential of each mode vanishes on the orbit when b beta = alpha
//! and omega0 = 0, and otherwise takes its closed-form value.

use std::f64::consts::FRAC_PI_2;

use pilotwave::quantization::{solve_orbit, PhysicalParams};
use pilotwave::wavefield::{quantum_potential, quantum_potential_on_orbit, Mode, Sign};

fn report(params: &PhysicalParams) -> pilotwave::Result<()> {
    let o = solve_orbit(params, 1.0)?;
    for sign in [Sign::Plus, Sign::Minus] {
        let mode = Mode::from_orbit(&o, sign, None)?;
        let scale = (mode.m as f64 / o.r).powi(2);
        let h = 1e-4 * o.r;
        let q1 = quantum_potential(&mode, o.r, FRAC_PI_2, 0.0, h)?;
        let q2 = quantum_potential(&mode, o.r, FRAC_PI_2, 0.0, h / 2.0)?;
        println!(
            "  {sign:?}: Q/(m/r)^2 = {:.3e} (h), {:.3e} (h/2), closed form {:.3e}",
            q1 / scale,
            q2 / scale,
            quantum_potential_on_orbit(&o, mode.m as f64) / scale
        );
    }
    Ok(())
}

pub fn run_example() -> pilotwave::Result<()> {
    println!("b beta = alpha:");
    report(&PhysicalParams::new(1.0 / 3.0, 1.0)?)?;
    println!("beta = 0.2 alpha:");
    report(&PhysicalParams::new(1.0 / 3.0, 1.0)?.with_xi_charge(0.2))?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
