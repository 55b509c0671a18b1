//! Integrate the first hydrogen orbit and compare the particle clock with the field.

use std::f64::consts::PI;

use pilotwave::dynamics::{
    circular_initials, conservation_report, constraint_residual, integrate_orbit, phase_drift_rate, MotionParams,
};
use pilotwave::quantization::{solve_orbit, PhysicalParams};

pub fn run_example() -> pilotwave::Result<()> {
    let o = solve_orbit(&PhysicalParams::hydrogen(), 1.0)?;
    let motion = MotionParams::from_orbit(&o);
    let periods = 10.0;
    let traj = integrate_orbit(&motion, &circular_initials(&o), periods * o.period(), 1e-12)?;
    let cons = conservation_report(&motion, &traj)?;
    let cr = constraint_residual(&traj, &o, 1.0)?;
    let last = traj.last().expect("trajectory has samples");
    println!("steps: {}", traj.len());
    println!(
        "radius deviation {:.2e}, energy drift {:.2e}, L drift {:.2e}",
        cons.radius_deviation, cons.energy_drift, cons.angular_momentum_drift
    );
    println!("action / (2 pi) per period: {:.12}", last.action / (2.0 * PI * periods));
    println!("|z - u| max {:.2e}, phase max {:.2e}", cr.max_abs, cr.max_phase);

    // a 1% faster clock drifts away from the field at a predictable rate
    let detuned = motion.with_omega_p(1.01 * o.omega_p);
    let traj = integrate_orbit(&detuned, &circular_initials(&o), 2.0 * o.period(), 1e-12)?;
    println!(
        "detuned drift rate {:.6e} (predicted {:.6e})",
        phase_drift_rate(&traj, &o, 1.0)?,
        -0.01 * o.omega_p * o.inverse_gamma()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
