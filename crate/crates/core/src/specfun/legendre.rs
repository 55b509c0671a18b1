use crate::error::{Error, Result};

/// A validated (l, m) pair with |m| <= l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegendreOrder {
    l: u32,
    m: i32,
}

impl LegendreOrder {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::domain(
                "assoc_legendre",
                format!("|m| = {} exceeds l = {l}", m.unsigned_abs()),
            ));
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }
}

/// Associated Legendre function P_l^m(x) on [-1, 1], with the Condon–Shortley
/// phase (-1)^m included.
pub fn assoc_legendre(order: LegendreOrder, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain("assoc_legendre", format!("x = {x} outside [-1, 1]")));
    }
    let l = order.l;
    let m = order.m.unsigned_abs();
    let pos = legendre_nonneg(l, m, x);
    if order.m >= 0 {
        return Ok(pos);
    }
    // P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m
    let mut ratio = 1.0;
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * ratio * pos)
}

fn legendre_nonneg(l: u32, m: u32, x: f64) -> f64 {
    // P_m^m = (-1)^m (2m-1)!! (1-x²)^{m/2}
    let somx2 = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

/// P_l^m(x) / P_l^m(0) for l + m even, l >= m >= 0.
///
/// Both values are produced by the same recurrence seeded without the
/// (2m-1)!! factor, so orders far beyond the f64 range of P_l^m itself stay
/// finite. The ratio is the same for the order -m.
pub(crate) fn legendre_equator_ratio(l: u32, m: u32, x: f64) -> f64 {
    legendre_scaled(l, m, x) / legendre_scaled(l, m, 0.0)
}

/// P_l^m(x) up to a constant factor (±(2m−1)!!), finite for any order.
pub(crate) fn legendre_scaled(l: u32, m: u32, x: f64) -> f64 {
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    let mut pmm = s.powi(m as i32);
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    let mut pll = pmmp1;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

/// k!! for k >= -1 (with (-1)!! = 0!! = 1), exact.
pub fn double_factorial(k: i64) -> Result<u128> {
    if k < -1 {
        return Err(Error::domain("double_factorial", format!("k = {k} < -1")));
    }
    let mut acc: u128 = 1;
    let mut j = k;
    while j > 1 {
        acc = acc
            .checked_mul(j as u128)
            .ok_or_else(|| Error::domain("double_factorial", format!("{k}!! overflows u128")))?;
        j -= 2;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: u32, m: i32, x: f64) -> f64 {
        assoc_legendre(LegendreOrder::new(l, m).unwrap(), x).unwrap()
    }

    #[test]
    fn closed_forms() {
        let x: f64 = 0.37;
        let s = (1.0 - x * x).sqrt();
        assert!((p(0, 0, x) - 1.0).abs() < 1e-15);
        assert!((p(1, 1, x) + s).abs() < 1e-15);
        assert!((p(2, 0, x) - 0.5 * (3.0 * x * x - 1.0)).abs() < 1e-15);
        assert!((p(2, 2, x) - 3.0 * s * s).abs() < 1e-14);
        assert!((p(3, 1, x) + 1.5 * (5.0 * x * x - 1.0) * s).abs() < 1e-14);
    }

    #[test]
    fn negative_order() {
        let x = -0.2;
        // P_1^{-1} = -P_1^1 / 2
        assert!((p(1, -1, x) + 0.5 * p(1, 1, x)).abs() < 1e-15);
    }

    #[test]
    fn equator_values() {
        // P_l^m(0) = 0 for odd l+m and (-1)^((l+m)/2) (l+m-1)!!/(l-m)!! otherwise
        for l in 0..12u32 {
            for m in 0..=l {
                let v = p(l, m as i32, 0.0);
                if (l + m) % 2 == 1 {
                    assert!(v.abs() < 1e-12);
                } else {
                    let num = double_factorial((l + m) as i64 - 1).unwrap() as f64;
                    let den = double_factorial((l - m) as i64).unwrap() as f64;
                    let sign = if ((l + m) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let want = sign * num / den;
                    assert!((v - want).abs() <= 1e-12 * want.abs(), "l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn equator_ratio_matches_direct_quotient() {
        for (l, m) in [(0u32, 0u32), (4, 4), (6, 2), (9, 3), (12, 0)] {
            for &x in &[-0.7, 0.1, 0.55] {
                let want = p(l, m as i32, x) / p(l, m as i32, 0.0);
                let got = legendre_equator_ratio(l, m, x);
                assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "l={l} m={m} x={x}");
            }
        }
        // far beyond the range where P_l^m itself is representable
        let r = legendre_equator_ratio(400, 400, 0.6);
        assert!((r - 0.8f64.powi(400)).abs() <= 1e-12 * r);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LegendreOrder::new(2, 3).is_err());
        assert!(assoc_legendre(LegendreOrder::new(2, 1).unwrap(), 1.5).is_err());
        assert!(double_factorial(-2).is_err());
        assert_eq!(double_factorial(-1).unwrap(), 1);
        assert_eq!(double_factorial(7).unwrap(), 105);
        assert!(double_factorial(200).is_err());
    }
}
