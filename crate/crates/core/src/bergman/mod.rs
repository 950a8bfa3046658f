//! Weighted inner products on the ball and on the two-dimensional example.

mod c2;
mod estimate;
mod gram;
mod integrals;

pub use c2::*;
pub use estimate::*;
pub use gram::*;
pub use integrals::*;
