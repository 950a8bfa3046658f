pub mod error;
pub mod field;
pub mod catalog;
pub mod geometry;
pub mod dbar;
pub mod bergman;
pub mod reports;

pub use error::{Error, Result};
