//! Run configuration shared by every command.

use std::path::PathBuf;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::parse_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    TorsionReport,
    WeightScan,
    Spectrum,
    C2,
    SolveDbar,
    AllFixtures,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub family: Option<String>,
    pub theorem: Option<String>,
    pub spec: Option<PathBuf>,
    pub n: Vec<usize>,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub m_max: u32,
    pub value_max: u32,
    pub eta: Option<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// Relative tolerance for float comparisons against exact values.
    pub tol: f64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            family: None,
            theorem: None,
            spec: None,
            n: vec![2],
            alpha: vec!["-1".into()],
            beta: Vec::new(),
            m_max: 6,
            value_max: 10,
            eta: None,
            format: Format::Json,
            out: None,
            seed: 0x5EED,
            tol: 1e-9,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        if self.n.is_empty() || self.n.contains(&0) {
            return Err(Error::InvalidParameter("n grid must be nonempty and positive".into()));
        }
        if matches!(self.command, Command::Spectrum | Command::SolveDbar) {
            if self.alpha.is_empty() {
                return Err(Error::InvalidParameter("alpha grid is empty".into()));
            }
            for a in self.alphas()? {
                crate::dbar::check_alpha(&a)?;
            }
        }
        Ok(())
    }

    pub fn alphas(&self) -> Result<Vec<BigRational>> {
        self.alpha.iter().map(|s| parse_exact(s)).collect()
    }
}

/// `"p/q"` or an integer; decimals are refused so no float leaks into exact paths.
pub fn parse_exact(s: &str) -> Result<BigRational> {
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!("`{s}` is not an exact rational; write it as p/q")));
    }
    parse_rational(s)
}

/// Splits `-1,0,1/2` style lists.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}
