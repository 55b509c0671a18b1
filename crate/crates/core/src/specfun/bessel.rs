use crate::error::{Error, Result};

/// Spherical Bessel function of the first kind j_l(x) for real x.
///
/// Small arguments use the power series, x >= l uses upward recurrence from
/// j_0 and j_1 (stable there), and the remaining region uses Miller's
/// downward recurrence normalised against j_0.
pub fn spherical_bessel_j(l: u32, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("spherical_bessel_j", format!("non-finite argument {x}")));
    }
    if x < 0.0 {
        // j_l(-x) = (-1)^l j_l(x)
        let v = spherical_bessel_j(l, -x)?;
        return Ok(if l.is_multiple_of(2) { v } else { -v });
    }
    let lf = l as f64;
    if x == 0.0 {
        return Ok(if l == 0 { 1.0 } else { 0.0 });
    }
    if x * x < 0.1 * (2.0 * lf + 3.0) || x < 1e-3 {
        return Ok(series(l, x));
    }
    if x >= lf {
        return Ok(upward(l, x));
    }
    Ok(miller(l, x))
}

fn series(l: u32, x: f64) -> f64 {
    // j_l(x) = x^l / (2l+1)!! Σ_k (-x²/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
    let mut lead = 1.0;
    for k in 1..=l {
        lead *= x / (2 * k + 1) as f64;
    }
    let y = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= y / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn upward(l: u32, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return j0;
    }
    let mut jm = j0;
    let mut j = s / (x * x) - c / x;
    for k in 1..l {
        let next = (2 * k + 1) as f64 / x * j - jm;
        jm = j;
        j = next;
    }
    j
}

fn miller(l: u32, x: f64) -> f64 {
    let start = l + 20 + (x.sqrt() * 10.0) as u32;
    let mut jp = 0.0;
    let mut j = 1e-300;
    let mut target = 0.0;
    let mut k = start;
    while k > 0 {
        let next = (2 * k + 1) as f64 / x * j - jp;
        jp = j;
        j = next;
        k -= 1;
        if k == l {
            target = j;
        }
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            target *= 1e-250;
        }
    }
    let j0 = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
    // Normalise with whichever of j0 or j1 is further from a zero.
    let j1 = x.sin() / (x * x) - x.cos() / x;
    if j0.abs() >= j1.abs() {
        target * j0 / j
    } else {
        target * j1 / jp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_match_closed_forms() {
        for &x in &[0.5, 1.0, 3.7, 12.0, 80.0] {
            let (s, c) = f64::sin_cos(x);
            let j0 = s / x;
            let j1 = s / (x * x) - c / x;
            let j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
            for (l, want) in [(0, j0), (1, j1), (2, j2)] {
                let got = spherical_bessel_j(l, x).unwrap();
                assert!((got - want).abs() <= 1e-13, "l={l} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn small_argument_leading_terms() {
        // j_2(x) = x²/15 (1 - x²/14 + x⁴/504 - ...)
        let x: f64 = 0.01;
        let want = x * x / 15.0 * (1.0 - x * x / 14.0 + x.powi(4) / 504.0);
        let got = spherical_bessel_j(2, x).unwrap();
        assert!((got - want).abs() <= 1e-15 * want);
    }

    #[test]
    fn regions_join_smoothly() {
        // Recurrence j_{l-1} + j_{l+1} = (2l+1)/x j_l holds regardless of branch.
        for &x in &[0.3, 2.0, 7.5, 15.0, 40.0] {
            for l in 1..25u32 {
                let a = spherical_bessel_j(l - 1, x).unwrap();
                let b = spherical_bessel_j(l, x).unwrap();
                let c = spherical_bessel_j(l + 1, x).unwrap();
                let lhs = a + c;
                let rhs = (2 * l + 1) as f64 / x * b;
                let scale = a.abs() + c.abs() + 1e-300;
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "l={l} x={x}");
            }
        }
    }

    #[test]
    fn parity_and_origin() {
        assert_eq!(spherical_bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(spherical_bessel_j(3, 0.0).unwrap(), 0.0);
        let a = spherical_bessel_j(3, 2.5).unwrap();
        let b = spherical_bessel_j(3, -2.5).unwrap();
        assert_eq!(a, -b);
        assert!(spherical_bessel_j(1, f64::NAN).is_err());
    }
}
