//! Command orchestration and report rendering behind the command-line tool.

mod commands;
mod config;
mod render;

pub use commands::*;
pub use config::*;
pub use render::*;
