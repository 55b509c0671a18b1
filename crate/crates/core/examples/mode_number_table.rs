//! m+ and m- for integer and half-integer n, exactly, at alpha = 1/137.
//!
//! Half-integer n give quarter-integer mode numbers; only integer n pass the
//! selection rule.

use num_rational::BigRational;
use pilotwave::cli::format_exact;
use pilotwave::quantization::{fine_structure_exact, mode_numbers_exact, parse_rational};

pub fn run_example() -> pilotwave::Result<()> {
    let alpha = parse_rational("1/137")?;
    let b = BigRational::from_integer(1.into());
    for n in ["1/2", "1", "3/2", "2", "5/2", "10"] {
        let e = mode_numbers_exact(&alpha, &b, &parse_rational(n)?)?;
        let back = fine_structure_exact(&e.m_plus, &e.m_minus, &b)?;
        println!(
            "n = {n:>4}: m+ = {:>8}, m- = {:>8}, integral: {:5}, alpha recovered: {}",
            format_exact(&e.m_plus),
            format_exact(&e.m_minus),
            e.is_integral(),
            format_exact(&back)
        );
        assert_eq!(back, alpha);
    }
    // b = 2 halves both mode numbers
    let two = BigRational::from_integer(2.into());
    let e = mode_numbers_exact(&alpha, &two, &BigRational::from_integer(2.into()))?;
    println!(
        "b = 2, n = 2: m+ = {}, m- = {}",
        format_exact(&e.m_plus),
        format_exact(&e.m_minus)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> pilotwave::Result<()> {
    run_example()
}
