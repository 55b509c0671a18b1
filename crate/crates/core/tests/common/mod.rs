#![allow(dead_code)]

use num_complex::Complex64;
use serde_json::Value;

/// Values frozen by `tests/oracle/generate_reference_values.py`.
pub fn reference() -> Value {
    serde_json::from_str(include_str!("../oracle/reference_values.json")).expect("valid reference json")
}

pub fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

pub fn cplx(v: &Value) -> Complex64 {
    Complex64::new(num(&v[0]), num(&v[1]))
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

pub fn crel(a: Complex64, b: Complex64) -> f64 {
    if b.norm() == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / b.norm()
    }
}
