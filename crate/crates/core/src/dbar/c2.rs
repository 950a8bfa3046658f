//! The Laplacian of the two-dimensional non-decoupled example.
//!
//! On `v1 = z1^k z2^l dz1` it acts by `k+1`, on `v2 = z1^k z2^l dz2` by `k`.

use serde::{Deserialize, Serialize};

use super::basis::MultiIndex;
use super::forms::{c2_box_apply, MonomialForm};
use crate::bergman::c2_membership;
use crate::error::{Error, Result};
use crate::field::GaussRat;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2Row {
    pub value: u32,
    pub multiplicity: usize,
    /// `2(value-1) - 1`.
    pub expected: usize,
}

/// Eigenvalue of `z1^k z2^l dz_slot` read off from the operator, if it is an eigenform.
pub fn c2_eigenvalue(k: u32, l: u32, slot: usize) -> Result<Option<u32>> {
    let u = MonomialForm::one_form(MultiIndex(vec![k, l]), slot, GaussRat::one());
    let v = c2_box_apply(&u)?;
    for lambda in 0..=k + 1 {
        if v == u.scale(&GaussRat::from_int(lambda as i64)) {
            return Ok(Some(lambda));
        }
    }
    Ok(None)
}

/// Eigenvalues `2..=value_max` with multiplicities over the admissible forms.
pub fn c2_spectrum(value_max: u32) -> Result<Vec<C2Row>> {
    if value_max < 2 {
        return Err(Error::InvalidParameter("value_max must be at least 2".into()));
    }
    let mut counts = vec![0usize; value_max as usize + 1];
    // v1 at k has value k+1, v2 at k has value k
    for k in 0..=value_max {
        for l in 0..=k {
            if !c2_membership(k, l) {
                continue;
            }
            for slot in 0..2 {
                let v = c2_eigenvalue(k, l, slot)?.ok_or_else(|| Error::InvalidParameter("not an eigenform".into()))?;
                if (2..=value_max).contains(&v) {
                    counts[v as usize] += 1;
                }
            }
        }
    }
    Ok((2..=value_max)
        .map(|v| C2Row { value: v, multiplicity: counts[v as usize], expected: 2 * (v as usize - 1) - 1 })
        .collect())
}
