//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::GaussRat;

/// Basis of `{x : A x = 0}`, each vector scaled so its first nonzero entry is 1.
pub fn null_space(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][free].clone();
        }
        if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
            for x in v.iter_mut() {
                *x = &*x / &first;
            }
        }
        out.push(v);
    }
    out
}

/// Solves `A x = b` for square rational `A` and Gaussian-rational `b`.
pub fn solve(a: &[Vec<BigRational>], b: &[GaussRat]) -> Result<Vec<GaussRat>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<GaussRat> = b.to_vec();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).ok_or_else(|| Error::Singular("block matrix".into()))?;
        m.swap(c, p);
        rhs.swap(c, p);
        let inv = BigRational::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        rhs[c] = rhs[c].scale(&inv);
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..n {
                    let t = &f * &m[c][k];
                    m[i][k] -= t;
                }
                let t = rhs[c].scale(&f);
                rhs[i] = &rhs[i] - &t;
            }
        }
    }
    Ok(rhs)
}
