//! Weighted pairings of monomial forms and the Gram matrices of the graded pieces.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::integrals::{monomial_integral_exact, BallMeasure};
use crate::dbar::{box1_matrix_symbolic, check_alpha, FormIndex, MonomialForm, SubspaceBasis};
use crate::error::{Error, Result};
use crate::field::{format_rational, rat_to_f64};

/// `∫ f conj(g) (1-|z|^2)^c dλ` for functions.
pub fn pair_functions(f: &MonomialForm, g: &MonomialForm, mu: &BallMeasure) -> Result<Complex64> {
    if f.degree() != 0 || g.degree() != 0 {
        return Err(Error::InvalidParameter("expected functions".into()));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for (lam, _, a) in f.terms() {
        let b = g.coefficient(lam, FormIndex::Scalar);
        if !b.is_zero() {
            s += a.to_complex() * b.to_complex().conj() * mu.integral(lam, lam);
        }
    }
    Ok(s)
}

fn contract(u: &MonomialForm) -> MonomialForm {
    let mut out = MonomialForm::zero(u.dim(), 0);
    for j in 0..u.dim() {
        out = out.add(&u.component(j).times_z(j));
    }
    out
}

/// `∫ (Σ u_k conj(v_k) - (Σ z_j u_j) conj(Σ z_k v_k)) (1-|z|^2)^c dλ`.
pub fn pair_one_forms(u: &MonomialForm, v: &MonomialForm, mu: &BallMeasure) -> Result<Complex64> {
    if u.degree() != 1 || v.degree() != 1 {
        return Err(Error::InvalidParameter("expected one-forms".into()));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for k in 0..u.dim() {
        s += pair_functions(&u.component(k), &v.component(k), mu)?;
    }
    Ok(s - pair_functions(&contract(u), &contract(v), mu)?)
}

pub fn norm_sq_function(f: &MonomialForm, mu: &BallMeasure) -> Result<f64> {
    Ok(pair_functions(f, f, mu)?.re)
}

pub fn norm_sq_one_form(u: &MonomialForm, mu: &BallMeasure) -> Result<f64> {
    Ok(pair_one_forms(u, u, mu)?.re)
}

/// Gram matrix of a graded piece, stored as exact multiples of `π^n`.
#[derive(Clone, Debug)]
pub struct GramBlock {
    pub n: usize,
    pub alpha: BigRational,
    pub m: u32,
    pub exact: Vec<Vec<BigRational>>,
}

impl GramBlock {
    pub fn size(&self) -> usize {
        self.exact.len()
    }

    pub fn values(&self) -> Vec<Vec<f64>> {
        let s = std::f64::consts::PI.powi(self.n as i32);
        self.exact.iter().map(|r| r.iter().map(|x| rat_to_f64(x) * s).collect()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.exact[i][j] == self.exact[j][i]))
    }

    pub fn is_positive_definite(&self) -> bool {
        let n = self.size();
        let v = self.values();
        DMatrix::from_fn(n, n, |i, j| v[i][j]).cholesky().is_some()
    }
}

/// `<e_a, e_b> = δ_{l_a l_b} I(Λ_a, Λ_b) - I(Λ_a + e_{l_a}, Λ_b + e_{l_b})` over `idx`, divided by `π^n`.
pub fn gram_entries(basis: &SubspaceBasis, idx: &[usize], c: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    let mut g = vec![vec![BigRational::zero(); idx.len()]; idx.len()];
    for (i, &a) in idx.iter().enumerate() {
        let (la, ka) = basis.get(a);
        for (j, &b) in idx.iter().enumerate() {
            let (lb, kb) = basis.get(b);
            let mut v = -monomial_integral_exact(&la.add_unit(*ka), &lb.add_unit(*kb), c)?;
            if ka == kb {
                v += monomial_integral_exact(la, lb, c)?;
            }
            g[i][j] = v;
        }
    }
    Ok(g)
}

pub fn gram_block(n: usize, alpha: &BigRational, m: u32) -> Result<GramBlock> {
    check_alpha(alpha)?;
    let c = -alpha - BigRational::one();
    let basis = SubspaceBasis::new(n, m)?;
    let all: Vec<usize> = (0..basis.len()).collect();
    Ok(GramBlock { n, alpha: alpha.clone(), m, exact: gram_entries(&basis, &all, &c)? })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub kind: String,
    pub n: usize,
    pub alpha: String,
    pub m: u32,
    #[serde(rename = "N")]
    pub size: usize,
    /// `G A` equals its transpose in exact arithmetic.
    pub exact_symmetric: bool,
    /// `max |GA - (GA)^T| / max |GA|` in floating point.
    pub relative_asymmetry: f64,
    pub gram_positive_definite: bool,
    /// Eigenvectors of `A` orthonormal for `G` reproduce `A`.
    pub g_orthogonal_eigenbasis: bool,
    pub pass: bool,
}

/// Whether `G A` is symmetric, with `G` the Gram matrix and `A` the Laplacian matrix.
pub fn weighted_symmetry_check(n: usize, alpha: &BigRational, m: u32) -> Result<SymmetryReport> {
    let g = gram_block(n, alpha, m)?;
    let a = box1_matrix_symbolic(n, m)?.dense(alpha);
    let size = g.size();
    let mut ga = vec![vec![BigRational::zero(); size]; size];
    for i in 0..size {
        for k in 0..size {
            if g.exact[i][k].is_zero() {
                continue;
            }
            for j in 0..size {
                if !a[k][j].is_zero() {
                    ga[i][j] += &g.exact[i][k] * &a[k][j];
                }
            }
        }
    }
    let exact_symmetric = (0..size).all(|i| (0..i).all(|j| ga[i][j] == ga[j][i]));
    let gf: Vec<Vec<f64>> = g.values();
    let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(rat_to_f64).collect()).collect();
    let gm = DMatrix::from_fn(size, size, |i, j| gf[i][j]);
    let am = DMatrix::from_fn(size, size, |i, j| af[i][j]);
    let gam = &gm * &am;
    let scale = gam.amax().max(f64::MIN_POSITIVE);
    let relative_asymmetry = (&gam - gam.transpose()).amax() / scale;
    let (pd, basis_ok) = match gm.clone().cholesky() {
        Some(ch) => (true, g_orthogonal_eigenbasis(&gm, &am, ch.l())),
        None => (false, false),
    };
    Ok(SymmetryReport {
        kind: "weighted_symmetry".into(),
        n,
        alpha: format_rational(alpha),
        m,
        size,
        exact_symmetric,
        relative_asymmetry,
        gram_positive_definite: pd,
        g_orthogonal_eigenbasis: basis_ok,
        pass: exact_symmetric && relative_asymmetry <= 1e-8 && pd && basis_ok,
    })
}

/// With `G = L L^T`, `S = L^T A L^{-T}` is symmetric; its orthonormal eigenvectors
/// pulled back by `L^{-T}` are `G`-orthonormal eigenvectors of `A`.
fn g_orthogonal_eigenbasis(g: &DMatrix<f64>, a: &DMatrix<f64>, l: DMatrix<f64>) -> bool {
    let n = g.nrows();
    let Some(l_inv) = l.clone().try_inverse() else { return false };
    let s = l.transpose() * a * l_inv.transpose();
    let sym = (&s + s.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let v = l_inv.transpose() * &eig.eigenvectors;
    let lam = DMatrix::from_diagonal(&eig.eigenvalues);
    let scale = a.amax().max(1.0);
    let resid = (a * &v - &v * lam).amax() / scale;
    let ortho = (v.transpose() * g * &v - DMatrix::identity(n, n)).amax();
    resid < 1e-8 && ortho < 1e-8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbar::MultiIndex;
    use crate::field::GaussRat;

    #[test]
    fn one_dimensional_ground_entry() {
        // h^{11} = 1-|z|^2 so the entry is ∫ (1-|z|^2)^{-alpha} dλ = π/(1-alpha)
        let alpha = BigRational::new((-3).into(), 2.into());
        let g = gram_block(1, &alpha, 0).unwrap();
        assert_eq!(g.exact[0][0], BigRational::new(2.into(), 5.into()));
    }

    #[test]
    fn gram_matches_pairing() {
        let alpha = BigRational::from_integer((-1).into());
        let mu = BallMeasure::for_alpha(2, &alpha).unwrap();
        let g = gram_block(2, &alpha, 1).unwrap();
        let basis = SubspaceBasis::new(2, 1).unwrap();
        let vals = g.values();
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                let (la, ka) = basis.get(a);
                let (lb, kb) = basis.get(b);
                let u = MonomialForm::one_form(la.clone(), *ka, GaussRat::one());
                let v = MonomialForm::one_form(lb.clone(), *kb, GaussRat::one());
                let p = pair_one_forms(&u, &v, &mu).unwrap();
                assert!((p.re - vals[a][b]).abs() < 1e-13 && p.im.abs() < 1e-15);
            }
        }
        // <z1 dz2, z2 dz1> is minus the cross term I((1,1),(1,1))
        let cross = -monomial_integral_exact(&MultiIndex(vec![1, 1]), &MultiIndex(vec![1, 1]), &BigRational::zero()).unwrap();
        assert_eq!(g.exact[1][2], cross);
        assert!(g.is_symmetric() && g.is_positive_definite());
    }

    #[test]
    fn symmetry_examples() {
        for (n, a, m) in [(2, (-1, 1), 1), (2, (-1, 2), 2), (3, (-2, 1), 3)] {
            let alpha = BigRational::new(a.0.into(), a.1.into());
            let r = weighted_symmetry_check(n, &alpha, m).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
