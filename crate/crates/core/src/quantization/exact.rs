//! Exact rational arithmetic for mode numbers and the selection rule.
//!
//! Decimal inputs are parsed without rounding, so statements like
//! "m± are integers for α⁻¹ = 137, b = 1" are decided exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parse `"137"`, `"-0.25"`, `"1.5e-3"`, `"1/137"` or `"1/137.035999"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim())?;
        let den = parse_decimal(den.trim())?;
        if den.is_zero() {
            return Err(Error::param("rational", format!("zero denominator in {s:?}")));
        }
        return Ok(num / den);
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::param("rational", format!("cannot parse {s:?} as an exact number"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
    if neg {
        value = -value;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(value * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(value, num_traits::pow(ten, (-scale) as usize))
    })
}

/// The rational with the shortest decimal expansion that rounds to `x`.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::param("rational", format!("non-finite value {x}")));
    }
    // `{:e}` prints the shortest round-trip representation.
    parse_decimal(&format!("{x:e}"))
}

/// Distance from `q` to the nearest integer.
pub fn distance_to_integer(q: &BigRational) -> BigRational {
    let fl = q.floor();
    let below = q - &fl;
    let above = &fl + BigRational::one() - q;
    if below <= above {
        below
    } else {
        above
    }
}

/// Exact mode numbers and their integrality.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactModes {
    pub m_plus: BigRational,
    pub m_minus: BigRational,
}

impl ExactModes {
    pub fn is_integral(&self) -> bool {
        self.m_plus.is_integer() && self.m_minus.is_integer()
    }

    /// Largest distance of m± to the nearest integer.
    pub fn residual(&self) -> BigRational {
        let a = distance_to_integer(&self.m_plus);
        let b = distance_to_integer(&self.m_minus);
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.m_plus), to_f64(&self.m_minus))
    }
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn check_positive(name: &'static str, q: &BigRational) -> Result<()> {
    if q.is_positive() {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive, got {q}")))
    }
}

/// b·m± = n²/α ± n, exactly.
pub fn mode_numbers_exact(alpha: &BigRational, b: &BigRational, n: &BigRational) -> Result<ExactModes> {
    check_positive("alpha", alpha)?;
    check_positive("b", b)?;
    check_positive("n", n)?;
    let big_n = n * n / alpha;
    Ok(ExactModes {
        m_plus: (&big_n + n) / b,
        m_minus: (&big_n - n) / b,
    })
}

/// m± = bñ²/α ± ñ, exactly.
pub fn mode_numbers_tilde_exact(alpha: &BigRational, b: &BigRational, n_tilde: &BigRational) -> Result<ExactModes> {
    check_positive("alpha", alpha)?;
    check_positive("b", b)?;
    check_positive("n_tilde", n_tilde)?;
    let q = b / alpha;
    let sq = &q * n_tilde * n_tilde;
    Ok(ExactModes {
        m_plus: &sq + n_tilde,
        m_minus: &sq - n_tilde,
    })
}

/// α = (b/2)(m₊ − m₋)²/(m₊ + m₋), exactly.
pub fn fine_structure_exact(m_plus: &BigRational, m_minus: &BigRational, b: &BigRational) -> Result<BigRational> {
    if m_plus == m_minus {
        return Err(Error::ZeroCharge { m: to_f64(m_plus) });
    }
    if m_minus.is_negative() || m_plus < m_minus {
        return Err(Error::param(
            "m_plus",
            format!("need m_plus > m_minus >= 0, got ({m_plus}, {m_minus})"),
        ));
    }
    let d = m_plus - m_minus;
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(b * &d * &d / (two * (m_plus + m_minus)))
}

/// Greatest common divisor of the numerators of two integral rationals; used
/// by callers that want the reduced ratio m₊ : m₋.
pub fn integer_gcd(a: &BigRational, b: &BigRational) -> Option<BigInt> {
    if a.is_integer() && b.is_integer() {
        Some(a.numer().gcd(b.numer()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_exactly() {
        assert_eq!(q("0.25"), BigRational::new(1.into(), 4.into()));
        assert_eq!(q("1/137"), BigRational::new(1.into(), 137.into()));
        assert_eq!(q("137.035999"), BigRational::new(137_035_999.into(), 1_000_000.into()));
        assert_eq!(q("-1.5e2"), BigRational::from_integer((-150).into()));
        assert_eq!(q("2.5E-1"), q("1/4"));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn shortest_decimal_of_float() {
        assert_eq!(rational_from_f64(0.1).unwrap(), q("1/10"));
        assert_eq!(rational_from_f64(2.5).unwrap(), q("5/2"));
    }

    #[test]
    fn half_integer_row() {
        let m = mode_numbers_exact(&q("1/137"), &q("1"), &q("3/2")).unwrap();
        assert_eq!(m.m_plus, q("309.75"));
        assert_eq!(m.m_minus, q("306.75"));
        assert!(!m.is_integral());
        assert_eq!(m.residual(), q("1/4"));
    }

    #[test]
    fn perturbed_rule_in_tilde_form() {
        let alpha = q("1/137.035999");
        let b = q("137/137.035999");
        let m = mode_numbers_tilde_exact(&alpha, &b, &q("5")).unwrap();
        assert_eq!(m.m_plus, q("3430"));
        assert_eq!(m.m_minus, q("3420"));
        assert!(m.is_integral());
        // read as n = 5 the pair is not integral
        assert!(!mode_numbers_exact(&alpha, &b, &q("5")).unwrap().is_integral());
    }

    #[test]
    fn fine_structure_round_trip() {
        let a = fine_structure_exact(&q("550"), &q("546"), &q("1")).unwrap();
        assert_eq!(a, q("1/137"));
        assert_eq!(integer_gcd(&q("550"), &q("546")), Some(BigInt::from(2)));
    }
}
