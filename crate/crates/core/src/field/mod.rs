//! Exact rational functions in `z` and `zbar` with Wirtinger calculus.

pub mod expr;
pub mod gauss;
pub mod poly;
pub mod power;
pub mod rational;

pub use expr::{parse_expr, parse_expr_str};
pub use gauss::{format_rational, parse_rational, rat, rat_int, rat_to_f64, GaussRat};
pub use poly::{Slot, WPoly};
pub use power::{PowerProduct, ScaledField};
pub use rational::{WRational, ZeroTest};

use num_complex::Complex64;

/// A point of `C^n`; `zbar` slots are bound to the conjugates on evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub z: Vec<Complex64>,
}

impl Point {
    pub fn new(z: Vec<Complex64>) -> Self {
        Point { z }
    }

    pub fn real(x: &[f64]) -> Self {
        Point { z: x.iter().map(|&v| Complex64::new(v, 0.0)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z.iter().map(|c| c.norm_sqr()).sum()
    }
}
