//! The canonical solution `f = d* N eta` of `d f = eta`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::forms::{check_alpha, dbar_star_1, FormIndex, MonomialForm};
use super::linalg::solve;
use super::matrix::box1_matrix_symbolic;
use crate::error::{Error, Result};
use crate::field::GaussRat;

#[derive(Clone, Debug)]
pub struct CanonicalSolution {
    /// `N eta`, the preimage under the Laplacian.
    pub preimage: MonomialForm,
    pub f: MonomialForm,
    /// `d f - eta` vanishes exactly.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalSummary {
    pub eta: String,
    pub f: String,
    pub preimage: String,
    pub exact: bool,
}

impl From<(&MonomialForm, &CanonicalSolution)> for CanonicalSummary {
    fn from((eta, s): (&MonomialForm, &CanonicalSolution)) -> Self {
        CanonicalSummary { eta: eta.to_string(), f: s.f.to_string(), preimage: s.preimage.to_string(), exact: s.exact }
    }
}

/// Rejects `eta` with `d eta != 0`, naming the first offending coefficient.
pub fn require_closed(eta: &MonomialForm) -> Result<()> {
    if eta.degree() != 1 {
        return Err(Error::InvalidParameter("right-hand side must be a one-form".into()));
    }
    let d = eta.dbar()?;
    if let Some((lam, idx, c)) = d.terms().next() {
        let FormIndex::Two(r, s) = idx else { unreachable!() };
        let mono = super::basis::monomial_label(lam);
        let mono = if mono.is_empty() { "1".to_string() } else { mono.trim().to_string() };
        return Err(Error::NotClosedForm(format!("(d eta)_{}{} has coefficient {c} at {mono}", r + 1, s + 1)));
    }
    Ok(())
}

/// Solves the Laplacian degree by degree, then applies `d*`.
pub fn canonical_solution(eta: &MonomialForm, alpha: &BigRational) -> Result<CanonicalSolution> {
    check_alpha(alpha)?;
    require_closed(eta)?;
    let n = eta.dim();
    let mut pre = MonomialForm::zero(n, 1);
    for m in eta.degrees() {
        let part = eta.homogeneous_part(m);
        let b = box1_matrix_symbolic(n, m)?;
        let mut rhs: BTreeMap<usize, GaussRat> = BTreeMap::new();
        for (lam, idx, c) in part.terms() {
            let FormIndex::One(l) = *idx else { unreachable!() };
            rhs.insert(b.basis.position(lam, l).expect("degree matches"), c.clone());
        }
        for block in b.blocks() {
            if !block.iter().any(|i| rhs.contains_key(i)) {
                continue;
            }
            let a: Vec<Vec<BigRational>> = block.iter().map(|&r| block.iter().map(|&c| b.entry(r, c).eval(alpha)).collect()).collect();
            let y: Vec<GaussRat> = block.iter().map(|i| rhs.get(i).cloned().unwrap_or_else(GaussRat::zero)).collect();
            let x = solve(&a, &y)?;
            for (k, v) in x.into_iter().enumerate() {
                let (lam, l) = b.basis.get(block[k]);
                pre.add_term(lam.clone(), FormIndex::One(*l), v);
            }
        }
    }
    let f = dbar_star_1(&pre, alpha)?;
    let exact = f.dbar()? == *eta;
    Ok(CanonicalSolution { preimage: pre, f, exact })
}
