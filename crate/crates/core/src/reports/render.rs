//! The report envelope and its JSON, CSV and table renderings.

use serde::Serialize;
use serde_json::Value;

use super::config::{Format, RunConfig};
use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let cols = self.headers.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.headers).chain(&self.rows) {
            for (i, c) in r.iter().enumerate().take(cols) {
                width[i] = width[i].max(c.chars().count());
            }
        }
        let line = |r: &Vec<String>| {
            let cells: Vec<String> = r.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = width[i])).collect();
            cells.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers) + "\n";
        out += &width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ");
        out += "\n";
        for r in &self.rows {
            out += &line(r);
            out += "\n";
        }
        out
    }
}

fn io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub relative: f64,
    pub cluster: f64,
    pub quadrature: f64,
    pub estimate_slack: f64,
}

impl Tolerances {
    pub fn new(relative: f64) -> Self {
        Tolerances {
            relative,
            cluster: crate::dbar::CLUSTER_TOL,
            quadrature: crate::bergman::QUAD_TOL,
            estimate_slack: crate::bergman::ESTIMATE_SLACK,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub kind: String,
    pub version: String,
    pub config: RunConfig,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub pass: bool,
    pub data: Value,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(kind: &str, config: &RunConfig, pass: bool, data: Value, table: Table) -> Self {
        Report {
            kind: kind.into(),
            version: VERSION.into(),
            config: config.clone(),
            seed: config.seed,
            tolerances: Tolerances::new(config.tol),
            pass,
            data,
            table,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => self.table.to_csv()?,
            Format::Table => {
                let verdict = if self.pass { "PASS" } else { "FAIL" };
                format!("{} (holotorsion {})\n\n{}\nverdict: {verdict}\n", self.kind, self.version, self.table.to_text())
            }
        })
    }
}

pub fn verdict(pass: bool) -> String {
    if pass { "PASS" } else { "FAIL" }.to_string()
}
