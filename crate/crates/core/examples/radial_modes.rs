//! Radial functions in the three regimes, and the large-r law.

use pilotwave::wavefield::{asymptotic_deviation, coulomb_phase, radial, radial_ode_residual, Mode, Regime, Sign};

pub fn run_example() -> pilotwave::Result<()> {
    let regimes = [
        ("chargeless", Regime::Chargeless),
        ("coulomb", Regime::Coulomb { beta: 1.0 / 3.0 }),
        (
            "klein-gordon",
            Regime::KleinGordon {
                beta: 1.0 / 3.0,
                omega0: 0.5,
            },
        ),
    ];
    for (name, regime) in regimes {
        let mode = Mode::new(Sign::Plus, 3, 2, 1.0, regime)?;
        let r = radial(&mode, 7.5)?;
        let res = radial_ode_residual(&mode, 7.5, 1e-3)?;
        println!(
            "{name:>12}: l' = {:.6}, R(7.5) = {:.10e}, ODE residual {res:.1e}",
            mode.l_prime, r.re
        );
    }

    // leading-order error falls like 1/(omega r)
    for l in [0, 2, 5] {
        let mode = Mode::new(Sign::Plus, l, 0, 1.0, Regime::Coulomb { beta: 1.0 / 3.0 })?;
        let d: Vec<String> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&rho| asymptotic_deviation(&mode, rho, 16).map(|x| format!("{x:.3e}")))
            .collect::<pilotwave::Result<_>>()?;
        println!(
            "l = {l}: Coulomb phase {:.6}, deviation at 1e2/1e3/1e4: {}",
            coulomb_phase(&mode)?,
            d.join(" ")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
