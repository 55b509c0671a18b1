//! Which (alpha, b, n) give integer mode numbers.
//!
//! With a measured alpha the rule generally fails; rescaling b restores
//! integers when the orbit is labelled by n~ = (m+ - m-)/2 instead of n.

use pilotwave::quantization::{
    check_selection_rule, check_selection_rule_tilde, mode_numbers_tilde_exact, parse_rational, PhysicalParams,
    DEFAULT_INTEGER_TOL,
};

pub fn run_example() -> pilotwave::Result<()> {
    let hydrogen = PhysicalParams::hydrogen();
    for n in [1.0, 1.5, 2.0, 2.5] {
        let c = check_selection_rule(&hydrogen, n, DEFAULT_INTEGER_TOL)?;
        println!("alpha = 1/137, n = {n}: ok = {}, residual = {}", c.ok, c.residual);
    }

    let inv = 137.035999;
    let params = PhysicalParams::new(1.0 / inv, 137.0 / inv)?;
    let by_n = check_selection_rule(&params, 5.0, 1e-6)?;
    let by_tilde = check_selection_rule_tilde(&params, 5.0, 1e-6)?;
    println!(
        "alpha = 1/137.035999, b = 137 alpha: n = 5 -> {}, n~ = 5 -> {}",
        by_n.ok, by_tilde.ok
    );

    let e = mode_numbers_tilde_exact(
        &parse_rational("1/137.035999")?,
        &parse_rational("137/137.035999")?,
        &parse_rational("5")?,
    )?;
    println!("exact: m+ = {}, m- = {}", e.m_plus, e.m_minus);
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
