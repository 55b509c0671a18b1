//! The special functions underneath the radial modes.

use num_complex::Complex64;
use pilotwave::specfun::{
    assoc_legendre, gamma, kummer_m_with, log_gamma, spherical_bessel_j, KummerConfig, LegendreOrder,
};

pub fn run_example() -> pilotwave::Result<()> {
    let c = |re, im| Complex64::new(re, im);
    println!("Gamma(5)          = {}", gamma(c(5.0, 0.0))?);
    println!("ln Gamma(1/2 + 3i) = {}", log_gamma(c(0.5, 3.0))?);

    let cfg = KummerConfig::default();
    for z in [c(1.0, 0.0), c(0.0, -20.0), c(0.0, -200.0), c(0.0, -2000.0)] {
        let (m, path) = kummer_m_with(&cfg, c(3.0, -1.0 / 3.0), c(6.0, 0.0), z)?;
        println!("M(3 - i/3, 6, {z}) = {m:.12e}  via {path:?}");
    }

    for l in [0, 1, 5, 50] {
        println!("j_{l}(10) = {:.15e}", spherical_bessel_j(l, 10.0)?);
    }
    println!("P_1^1(0) = {}", assoc_legendre(LegendreOrder::new(1, 1)?, 0.0)?);
    println!("P_4^2(0.3) = {}", assoc_legendre(LegendreOrder::new(4, 2)?, 0.3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
