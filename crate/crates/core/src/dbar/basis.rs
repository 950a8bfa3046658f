//! Multi-indices and the monomial bases of the graded pieces.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest basis accepted by the assemblers.
pub const MAX_BASIS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn add_unit(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v[j] += 1;
        MultiIndex(v)
    }

    pub fn sub_unit(&self, j: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[j] = v[j].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    /// `Lambda_{j,l}`: one more in slot `l`, one fewer in slot `j`.
    pub fn shift(&self, j: usize, l: usize) -> Result<Self> {
        let n = self.dim();
        if j >= n || l >= n || j == l {
            return Err(Error::InvalidParameter(format!("shift needs distinct slots below {n}")));
        }
        let s = self.sub_unit(j).ok_or_else(|| Error::InvalidParameter(format!("shift underflows slot {}", j + 1)))?;
        Ok(s.add_unit(l))
    }

    pub fn add(&self, o: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All multi-indices of length `n` and total `m`, largest `lambda_1` first.
pub fn multi_indices(n: usize, m: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(m);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=m).rev() {
            prefix.push(a);
            rec(n, m - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, m, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
}

/// `n * C(n+m-1, n-1)`.
pub fn basis_size(n: usize, m: u32) -> u64 {
    n as u64 * binomial(n as u64 + m as u64 - 1, n as u64 - 1)
}

/// Ordered `(Lambda, l)` with `|Lambda| = m`: `Lambda` as in [`multi_indices`], then `l` ascending.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub n: usize,
    pub m: u32,
    elems: Vec<(MultiIndex, usize)>,
    index: HashMap<(MultiIndex, usize), usize>,
}

impl SubspaceBasis {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let size = basis_size(n, m);
        if size > MAX_BASIS as u64 {
            return Err(Error::TooLarge { what: "basis size", size: size as usize, limit: MAX_BASIS });
        }
        let mut elems = Vec::with_capacity(size as usize);
        for lam in multi_indices(n, m) {
            for l in 0..n {
                elems.push((lam.clone(), l));
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(SubspaceBasis { n, m, elems, index })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[(MultiIndex, usize)] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &(MultiIndex, usize) {
        &self.elems[i]
    }

    pub fn position(&self, lam: &MultiIndex, l: usize) -> Option<usize> {
        self.index.get(&(lam.clone(), l)).copied()
    }

    /// Label like `z1^2 z2 dz1`.
    pub fn label(&self, i: usize) -> String {
        let (lam, l) = &self.elems[i];
        format!("{}dz{}", monomial_label(lam), l + 1)
    }
}

pub fn monomial_label(lam: &MultiIndex) -> String {
    let mut s = String::new();
    for (j, &e) in lam.0.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("z{} ", j + 1)),
            _ => s.push_str(&format!("z{}^{} ", j + 1, e)),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        assert_eq!(MultiIndex(vec![2, 0]).shift(0, 1).unwrap(), MultiIndex(vec![1, 1]));
        assert_eq!(MultiIndex(vec![1, 1, 0]).shift(1, 2).unwrap(), MultiIndex(vec![1, 0, 1]));
        assert!(MultiIndex(vec![0, 1]).shift(0, 1).is_err());
    }

    #[test]
    fn basis_order_and_size() {
        let b = SubspaceBasis::new(2, 2).unwrap();
        let labels: Vec<String> = (0..b.len()).map(|i| b.label(i)).collect();
        assert_eq!(labels, ["z1^2 dz1", "z1^2 dz2", "z1 z2 dz1", "z1 z2 dz2", "z2^2 dz1", "z2^2 dz2"]);
        for n in 1..=5 {
            for m in 0..=6 {
                assert_eq!(SubspaceBasis::new(n, m).unwrap().len() as u64, basis_size(n, m));
            }
        }
        assert_eq!(basis_size(5, 10), 5005);
    }

    #[test]
    fn oversized_basis_is_rejected() {
        assert!(matches!(SubspaceBasis::new(12, 12), Err(Error::TooLarge { .. })));
    }
}
