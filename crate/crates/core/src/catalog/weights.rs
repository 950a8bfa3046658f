//! Weight families paired with the metric families.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::family::Family;
use crate::error::{Error, Result};
use crate::field::{parse_expr, parse_rational, GaussRat, WRational};
use crate::geometry::{one_minus_r, one_plus_r, RadialProfile, WeightField};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    /// `a + b log(1 - |z|^2)`.
    LogBall { a: String, b: String },
    /// `a + b log(1 + |z|^2)`.
    LogPlus { a: String, b: String },
    /// `c0 + sum c_j r_j d chi / d r_j` for the family's multi-radial potential.
    Multiradial { c0: String, c: Vec<String> },
    /// `gamma0 + sum gamma_j / (1 - r_j)`.
    Polydisk { gamma0: String, gammas: Vec<String> },
    /// `-C4 log(C2 r h~' + C3) + C5` with `C4 = n - 1 - C1 / C2`.
    UnInvariant { c1: String, c5: String },
    /// `psi` as an expression tree.
    Explicit { psi: Value },
    /// `psi_kbar` components as expression trees.
    Components { dbar: Vec<Value> },
}

fn q(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

fn c(n: usize, s: &str) -> Result<WRational> {
    Ok(WRational::constant(n, GaussRat::real(q(s)?)))
}

pub fn make_weight(family: &Family, spec: &WeightSpec) -> Result<WeightField> {
    let n = family.spec.n;
    match spec {
        WeightSpec::LogBall { b, .. } => WeightField::log_of(&one_minus_r(n), &c(n, b)?),
        WeightSpec::LogPlus { b, .. } => WeightField::log_of(&one_plus_r(n), &c(n, b)?),
        WeightSpec::Multiradial { c0, c: cs } => WeightField::from_potential(&multiradial_weight(family, c0, cs)?),
        WeightSpec::Polydisk { gamma0, gammas } => {
            if gammas.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: gammas.len() });
            }
            let mut psi = c(n, gamma0)?;
            for (j, g) in gammas.iter().enumerate() {
                let d = WRational::one(n).sub(&WRational::r_k(n, j));
                psi = psi.add(&c(n, g)?.div(&d)?);
            }
            WeightField::from_potential(&psi)
        }
        WeightSpec::UnInvariant { c1, .. } => {
            let (phi, c2) = family
                .un_factor
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("weight needs the unitary-invariant family".into()))?;
            let c4 = BigRational::from_integer((n as i64 - 1).into()) - q(c1)? / c2;
            WeightField::log_of(phi, &WRational::constant(n, GaussRat::real(-c4)))
        }
        WeightSpec::Explicit { psi } => WeightField::from_potential(&parse_expr(n, psi)?),
        WeightSpec::Components { dbar } => {
            if dbar.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: dbar.len() });
            }
            WeightField::from_components(dbar.iter().map(|e| parse_expr(n, e)).collect::<Result<_>>()?)
        }
    }
}

/// `C0 + sum_j C_j r_j G_j'(r_j) prod_{k != j} G_k(r_k)` for polynomial factors `G_j`.
pub fn product_potential_weight(factors: &[RadialProfile], c0: &BigRational, cs: &[BigRational]) -> Result<WeightField> {
    let n = factors.len();
    if cs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: cs.len() });
    }
    let values: Vec<WRational> = factors
        .iter()
        .enumerate()
        .map(|(j, g)| {
            g.value(&WRational::r_k(n, j))?
                .ok_or_else(|| Error::InvalidParameter("product factors must be polynomial".into()))
        })
        .collect::<Result<_>>()?;
    let mut psi = WRational::constant(n, GaussRat::real(c0.clone()));
    for (j, g) in factors.iter().enumerate() {
        let rj = WRational::r_k(n, j);
        let mut t = rj.mul(&g.d1(&rj)?).scale(&GaussRat::real(cs[j].clone()));
        for (k, v) in values.iter().enumerate() {
            if k != j {
                t = t.mul(v);
            }
        }
        psi = psi.add(&t);
    }
    WeightField::from_potential(&psi)
}

/// `psi = c0 + sum_j c_j r_j d chi / d r_j` on a family with a multi-radial potential.
pub fn multiradial_weight(family: &Family, c0: &str, cs: &[String]) -> Result<WRational> {
    let n = family.spec.n;
    let pot = family
        .potential
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("family has no multi-radial potential".into()))?;
    if cs.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: cs.len() });
    }
    let mut psi = c(n, c0)?;
    for (j, cj) in cs.iter().enumerate() {
        psi = psi.add(&WRational::r_k(n, j).mul(&pot.gradient()[j]).mul(&c(n, cj)?));
    }
    Ok(psi.simplified())
}
