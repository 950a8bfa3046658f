//! The matrix `a_{gamma beta}` of the complex Laplacian on a graded piece.
//!
//! Entries are affine in `alpha`, so one assembly serves every weight.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::basis::{MultiIndex, SubspaceBasis};
use super::forms::{box1_monomial, check_alpha};
use crate::error::Result;
use crate::field::{format_rational, rat_to_f64};

/// `c + a * alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub c: BigRational,
    pub a: BigRational,
}

impl Affine {
    pub fn new(c: BigRational, a: BigRational) -> Self {
        Affine { c, a }
    }

    pub fn from_ints(c: i64, a: i64) -> Self {
        Affine::new(BigRational::from_integer(c.into()), BigRational::from_integer(a.into()))
    }

    pub fn constant(c: BigRational) -> Self {
        Affine::new(c, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.a.is_zero()
    }

    pub fn eval(&self, alpha: &BigRational) -> BigRational {
        &self.c + &self.a * alpha
    }

    pub fn add(&self, o: &Self) -> Self {
        Affine::new(&self.c + &o.c, &self.a + &o.a)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Affine::new(&self.c - &o.c, &self.a - &o.a)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c.is_zero(), self.a.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.c)),
            (true, false) => write!(f, "{}a", format_rational(&self.a)),
            (false, false) => {
                let sign = if self.a < BigRational::zero() { "-" } else { "+" };
                let abs = if self.a < BigRational::zero() { -self.a.clone() } else { self.a.clone() };
                let coef = if abs.is_one() { String::new() } else { format_rational(&abs) };
                write!(f, "{}{}{}a", format_rational(&self.c), sign, coef)
            }
        }
    }
}

/// Sparse `a_{gamma beta}` with `box(e_beta) = sum_gamma a_{gamma beta} e_gamma`.
#[derive(Clone, Debug)]
pub struct Box1Matrix {
    pub basis: SubspaceBasis,
    /// `(row, col) -> entry`.
    entries: BTreeMap<(usize, usize), Affine>,
}

/// `box1_matrix` with symbolic `alpha`.
pub fn box1_matrix_symbolic(n: usize, m: u32) -> Result<Box1Matrix> {
    let basis = SubspaceBasis::new(n, m)?;
    let mut entries = BTreeMap::new();
    // probe at alpha = 0 and alpha = 1 to split each coefficient
    let zero = BigRational::zero();
    let one = BigRational::one();
    for (col, (lam, l)) in basis.elements().iter().enumerate() {
        let at0 = box1_monomial(lam, *l, &zero);
        let at1 = box1_monomial(lam, *l, &one);
        for ((t, j, c0), (_, _, c1)) in at0.into_iter().zip(at1) {
            let row = basis.position(&t, j).expect("piece is invariant");
            let a = &c1 - &c0;
            entries.insert((row, col), Affine::new(c0, a));
        }
    }
    Ok(Box1Matrix { basis, entries })
}

impl Box1Matrix {
    pub fn n(&self) -> usize {
        self.basis.n
    }

    pub fn m(&self) -> u32 {
        self.basis.m
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Affine {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| Affine::from_ints(0, 0))
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Affine)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    /// Dense symbolic matrix; only for small pieces.
    pub fn dense_symbolic(&self) -> Vec<Vec<Affine>> {
        let n = self.size();
        let mut d = vec![vec![Affine::from_ints(0, 0); n]; n];
        for ((r, c), v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    pub fn dense(&self, alpha: &BigRational) -> Vec<Vec<BigRational>> {
        self.dense_symbolic().iter().map(|row| row.iter().map(|x| x.eval(alpha)).collect()).collect()
    }

    pub fn dense_f64(&self, alpha: &BigRational) -> Vec<Vec<f64>> {
        self.dense(alpha).iter().map(|row| row.iter().map(rat_to_f64).collect()).collect()
    }

    /// Exact column sums.
    pub fn column_sums(&self, alpha: &BigRational) -> Vec<BigRational> {
        let mut s = vec![BigRational::zero(); self.size()];
        for ((_, c), v) in &self.entries {
            s[*c] += v.eval(alpha);
        }
        s
    }

    /// `(m+1)(n-alpha-1)`.
    pub fn expected_column_sum(&self, alpha: &BigRational) -> BigRational {
        let m = BigRational::from_integer((self.m() as i64 + 1).into());
        let n = BigRational::from_integer((self.n() as i64 - 1).into());
        m * (n - alpha)
    }

    /// Connected pieces: basis elements sharing `Lambda + e_l`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut by_key: BTreeMap<MultiIndex, Vec<usize>> = BTreeMap::new();
        for (i, (lam, l)) in self.basis.elements().iter().enumerate() {
            by_key.entry(lam.add_unit(*l)).or_default().push(i);
        }
        by_key.into_iter().rev().map(|(_, v)| v).collect()
    }

    /// Per-row Gershgorin data.
    pub fn gershgorin(&self, alpha: &BigRational) -> Result<Gershgorin> {
        check_alpha(alpha)?;
        let n = self.n();
        let size = self.size();
        let mut off = vec![BigRational::zero(); size];
        let mut diag = vec![BigRational::zero(); size];
        for ((r, c), v) in &self.entries {
            let x = v.eval(alpha);
            if r == c {
                diag[*r] = x;
            } else {
                off[*r] += x;
            }
        }
        let mut rows = Vec::with_capacity(size);
        for (g, (lam, l)) in self.basis.elements().iter().enumerate() {
            let q = (0..n).filter(|&j| j != *l && lam.get(j) >= 1).count();
            let predicted = BigRational::from_integer(((q as i64) * (lam.get(*l) as i64 + 1)).into());
            rows.push(GershgorinRow {
                q,
                delta: &diag[g] - &off[g],
                off_row_sum: off[g].clone(),
                off_row_sum_matches: off[g] == predicted,
            });
        }
        let two_bound = BigRational::from_integer(2.into()) * (BigRational::from_integer((n as i64 - 2).into()) - alpha);
        let min_delta = rows.iter().map(|r| r.delta.clone()).min().unwrap_or_else(BigRational::zero);
        Ok(Gershgorin { bound: two_bound, min_delta, rows })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GershgorinRow {
    pub q: usize,
    /// `a_{gamma gamma} - sum_{beta != gamma} a_{gamma beta}`.
    pub delta: BigRational,
    pub off_row_sum: BigRational,
    /// Whether the off-diagonal row sum equals `q (lambda_l + 1)`.
    pub off_row_sum_matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gershgorin {
    /// `2(n - alpha - 2)`.
    pub bound: BigRational,
    pub min_delta: BigRational,
    pub rows: Vec<GershgorinRow>,
}

impl Gershgorin {
    pub fn bound_holds(&self) -> bool {
        self.rows.iter().all(|r| r.delta >= self.bound)
    }

    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.delta < self.bound).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GershgorinSummary {
    pub min_delta: String,
    pub bound: String,
    pub bound_holds: bool,
    pub violations: usize,
    pub row_sums_match: bool,
}

impl From<&Gershgorin> for GershgorinSummary {
    fn from(g: &Gershgorin) -> Self {
        GershgorinSummary {
            min_delta: format_rational(&g.min_delta),
            bound: format_rational(&g.bound),
            bound_holds: g.bound_holds(),
            violations: g.violations(),
            row_sums_match: g.rows.iter().all(|r| r.off_row_sum_matches),
        }
    }
}
