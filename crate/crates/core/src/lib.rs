// NaN must fail range checks, so `!(x > 0.0)` is deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod quantization;
pub mod specfun;
pub mod wavefield;

pub use error::{Error, Result};
