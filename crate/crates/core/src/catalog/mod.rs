//! Metric and weight families, and the classification fixtures built on them.

mod family;
mod fixtures;
mod weights;

pub use family::*;
pub use fixtures::*;
pub use weights::*;
