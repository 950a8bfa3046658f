//! The holomorphic de Rham complex with the half hyperbolic weight, and the
//! two-dimensional example.

mod basis;
mod c2;
mod forms;
mod linalg;
mod matrix;
mod solve;
mod spectrum;

pub use basis::*;
pub use c2::*;
pub use forms::*;
pub use linalg::{null_space, solve as solve_exact};
pub use matrix::*;
pub use solve::*;
pub use spectrum::*;
