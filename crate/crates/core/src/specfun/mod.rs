//! Special functions on complex and real arguments.
//!
//! Everything returns [`crate::Result`]; domain problems (poles, out of range
//! arguments) are reported rather than returned as NaN.

mod bessel;
mod gamma;
mod kummer;
mod legendre;

pub use bessel::spherical_bessel_j;
pub(crate) use gamma::wrap_angle;
pub use gamma::{arg_gamma, gamma, log_gamma, rgamma};
pub use kummer::{kummer_m, kummer_m_and_derivative, kummer_m_with, KummerConfig, KummerPath};
pub use legendre::{assoc_legendre, double_factorial, LegendreOrder};
pub(crate) use legendre::{legendre_equator_ratio, legendre_scaled};

/// Complex scalar used throughout the crate.
pub type ComplexScalar = num_complex::Complex64;
