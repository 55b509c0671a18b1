//! Circular orbits of hydrogen-like parameters and their mode numbers.
//!
//! `cargo run --example quantized_orbits`

use pilotwave::quantization::{solve_orbit, PhysicalParams};

pub fn run_example() -> pilotwave::Result<()> {
    let params = PhysicalParams::hydrogen();
    println!(
        "{:>4} {:>10} {:>10} {:>14} {:>14} {:>18}",
        "n", "m+", "m-", "r/a0", "v", "E"
    );
    for n in 1..=5 {
        let o = solve_orbit(&params, n as f64)?;
        println!(
            "{:>4} {:>10} {:>10} {:>14.8} {:>14.6e} {:>18.15}",
            n,
            o.m_plus,
            o.m_minus,
            o.r / o.a0,
            o.v,
            o.e
        );
        assert!(o.selection_ok);
    }
    // P r = n on every orbit
    let o = solve_orbit(&params, 3.0)?;
    println!("P r at n = 3: {}", o.p * o.r);
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
