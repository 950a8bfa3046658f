//! Adjointness of `d` and `d*`, the L2 estimate, and orthogonality to `ker d`.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gram::{norm_sq_function, norm_sq_one_form, pair_functions, pair_one_forms};
use super::integrals::BallMeasure;
use crate::dbar::{
    canonical_solution, dbar_star_1, multi_indices, null_space, nu_formula, FormIndex, MonomialForm, MultiIndex,
};
use crate::error::{Error, Result};
use crate::field::{format_rational, rat_to_f64, GaussRat};

/// Slack on the estimate's right-hand side.
pub const ESTIMATE_SLACK: f64 = 1e-8;

/// `|<d f, u>_h - <f, d* u>| / (1 + |<d f, u>_h|)`.
pub fn adjointness_residual(f: &MonomialForm, u: &MonomialForm, alpha: &BigRational) -> Result<f64> {
    if f.dim() != u.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: u.dim() });
    }
    let mu = BallMeasure::for_alpha(f.dim(), alpha)?;
    let lhs = pair_one_forms(&f.dbar()?, u, &mu)?;
    let rhs = pair_functions(f, &dbar_star_1(u, alpha)?, &mu)?;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjointnessSweep {
    pub kind: String,
    pub n: usize,
    pub alpha: String,
    pub seed: u64,
    pub pairs: usize,
    /// Pairs where both sides are nonzero.
    pub nontrivial: usize,
    pub max_residual: f64,
    pub pass: bool,
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> GaussRat {
    let re = rng.gen_range(-6i64..=6);
    let im = rng.gen_range(-3i64..=3);
    let d = rng.gen_range(1i64..=4);
    GaussRat::new(BigRational::new(re.into(), d.into()), BigRational::new(im.into(), d.into()))
}

fn random_index(rng: &mut ChaCha8Rng, n: usize, m: u32) -> MultiIndex {
    let all = multi_indices(n, m);
    all[rng.gen_range(0..all.len())].clone()
}

/// A random monomial `f` of degree `1..=4` and a one-form `u` of one degree lower.
pub fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (MonomialForm, MonomialForm) {
    let m = rng.gen_range(1..=4);
    let f = MonomialForm::function(random_index(rng, n, m), random_coefficient(rng));
    let mut u = MonomialForm::zero(n, 1);
    for _ in 0..rng.gen_range(1..=3) {
        let l = rng.gen_range(0..n);
        u.add_term(random_index(rng, n, m - 1), FormIndex::One(l), random_coefficient(rng));
    }
    (f, u)
}

pub fn adjointness_sweep(n: usize, alpha: &BigRational, count: usize, seed: u64) -> Result<AdjointnessSweep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = BallMeasure::for_alpha(n, alpha)?;
    let mut max_residual = 0.0f64;
    let mut nontrivial = 0;
    for _ in 0..count {
        let (f, u) = random_pair(&mut rng, n);
        if pair_one_forms(&f.dbar()?, &u, &mu)?.norm() > 0.0 {
            nontrivial += 1;
        }
        max_residual = max_residual.max(adjointness_residual(&f, &u, alpha)?);
    }
    Ok(AdjointnessSweep {
        kind: "adjointness".into(),
        n,
        alpha: format_rational(alpha),
        seed,
        pairs: count,
        nontrivial,
        max_residual,
        pass: max_residual < 1e-8,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub kind: String,
    pub n: usize,
    pub alpha: String,
    pub eta: String,
    pub f: String,
    /// `d f = eta` in exact arithmetic.
    pub solves_exactly: bool,
    pub nu: String,
    /// `||f||^2`.
    pub lhs: f64,
    /// `||eta||_h^2 / nu`.
    pub rhs: f64,
    pub holds: bool,
    /// Largest `|<f, k>| / (||f|| ||k||)` over the computed basis of `ker d`.
    pub kernel_overlap: f64,
    pub orthogonal_to_kernel: bool,
}

impl EstimateReport {
    pub fn pass(&self) -> bool {
        self.solves_exactly && self.holds && self.orthogonal_to_kernel
    }
}

/// Both sides of `||f||^2 <= ||eta||_h^2 / nu` for the canonical solution.
pub fn estimate_check(eta: &MonomialForm, alpha: &BigRational) -> Result<EstimateReport> {
    let n = eta.dim();
    let sol = canonical_solution(eta, alpha)?;
    let mu = BallMeasure::for_alpha(n, alpha)?;
    let nu = nu_formula(n, alpha)?;
    let lhs = norm_sq_function(&sol.f, &mu)?;
    let rhs = norm_sq_one_form(eta, &mu)? / rat_to_f64(&nu);
    let top = eta.max_degree().unwrap_or(0) + 3;
    let kernel_overlap = kernel_overlap(&sol.f, &mu, top)?;
    Ok(EstimateReport {
        kind: "estimate".into(),
        n,
        alpha: format_rational(alpha),
        eta: eta.to_string(),
        f: sol.f.to_string(),
        solves_exactly: sol.exact,
        nu: format_rational(&nu),
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + ESTIMATE_SLACK),
        kernel_overlap,
        orthogonal_to_kernel: kernel_overlap < 1e-8,
    })
}

/// Basis of the holomorphic functions of degree `m` killed by `d`.
pub fn kernel_basis(n: usize, m: u32) -> Result<Vec<MonomialForm>> {
    let monos = multi_indices(n, m);
    // rows: coefficients of d(z^Λ) on the (Λ', l) targets
    let mut targets: Vec<(MultiIndex, usize)> = Vec::new();
    let mut images = Vec::with_capacity(monos.len());
    for lam in &monos {
        let d = MonomialForm::function(lam.clone(), GaussRat::one()).dbar()?;
        let mut col = Vec::new();
        for (t, idx, c) in d.terms() {
            let FormIndex::One(l) = *idx else { unreachable!() };
            let key = (t.clone(), l);
            let pos = targets.iter().position(|k| *k == key).unwrap_or_else(|| {
                targets.push(key);
                targets.len() - 1
            });
            col.push((pos, c.re.clone()));
        }
        images.push(col);
    }
    let mut a = vec![vec![BigRational::from_integer(0.into()); monos.len()]; targets.len()];
    for (j, col) in images.iter().enumerate() {
        for (i, v) in col {
            a[*i][j] = v.clone();
        }
    }
    if targets.is_empty() {
        // d vanishes on the whole piece
        return Ok(monos.into_iter().map(|l| MonomialForm::function(l, GaussRat::one())).collect());
    }
    Ok(null_space(&a)
        .into_iter()
        .map(|v| {
            let mut f = MonomialForm::zero(n, 0);
            for (k, c) in v.into_iter().enumerate() {
                f.add_term(monos[k].clone(), FormIndex::Scalar, GaussRat::real(c));
            }
            f
        })
        .collect())
}

/// Largest normalized pairing of `f` with `ker d` in degrees below `top`.
pub fn kernel_overlap(f: &MonomialForm, mu: &BallMeasure, top: u32) -> Result<f64> {
    let nf = norm_sq_function(f, mu)?.sqrt();
    if nf == 0.0 {
        return Ok(0.0);
    }
    let mut worst = 0.0f64;
    for m in 0..top {
        for k in kernel_basis(f.dim(), m)? {
            let p: Complex64 = pair_functions(f, &k, mu)?;
            worst = worst.max(p.norm() / (nf * norm_sq_function(&k, mu)?.sqrt()));
        }
    }
    Ok(worst)
}
