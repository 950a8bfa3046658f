//! Weighted monomial integrals on the unit ball, `dλ` Lebesgue on `R^{2n}`.

use std::f64::consts::PI;

use gauss_quad::GaussJacobi;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dbar::MultiIndex;
use crate::error::{Error, Result};
use crate::field::rat_to_f64;

/// Relative agreement between successive quadrature refinements.
pub const QUAD_TOL: f64 = 1e-10;

/// Node cap per axis.
pub const MAX_NODES: usize = 1 << 14;

/// `(1-|z|^2)^c dλ` on the ball in `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BallMeasure {
    pub n: usize,
    pub c: f64,
}

impl BallMeasure {
    pub fn new(n: usize, c: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if !(c > -1.0) {
            return Err(Error::InvalidParameter(format!("weight exponent must exceed -1, got {c}")));
        }
        Ok(BallMeasure { n, c })
    }

    /// The exponent `-alpha-1` of the half hyperbolic weight.
    pub fn for_alpha(n: usize, alpha: &BigRational) -> Result<Self> {
        crate::dbar::check_alpha(alpha)?;
        BallMeasure::new(n, rat_to_f64(&(-alpha - BigRational::one())))
    }

    /// `∫ z^lam conj(z^mu) dμ`.
    pub fn integral(&self, lam: &MultiIndex, mu: &MultiIndex) -> f64 {
        if lam != mu {
            return 0.0;
        }
        // Γ(c+1)/Γ(n+|Λ|+c+1) telescopes to a finite product
        let top = self.n as u64 + lam.total() as u64;
        let mut v = PI.powi(self.n as i32);
        for &l in &lam.0 {
            v *= factorial(l);
        }
        for k in 1..=top {
            v /= self.c + k as f64;
        }
        v
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |a, i| a * i as f64)
}

/// `π^n ∏ λ_j! Γ(c+1) / Γ(n+|Λ|+c+1)` when `lam == mu`, else zero.
pub fn monomial_integral(lam: &MultiIndex, mu: &MultiIndex, c: f64, n: usize) -> Result<f64> {
    if lam.dim() != n || mu.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lam.dim().max(mu.dim()) });
    }
    Ok(BallMeasure::new(n, c)?.integral(lam, mu))
}

/// The same integral divided by `π^n`, exactly.
pub fn monomial_integral_exact(lam: &MultiIndex, mu: &MultiIndex, c: &BigRational) -> Result<BigRational> {
    let n = lam.dim();
    if *c <= -BigRational::one() {
        return Err(Error::InvalidParameter(format!("weight exponent must exceed -1, got {c}")));
    }
    if lam != mu {
        return Ok(BigRational::zero());
    }
    let mut v = BigRational::one();
    for &l in &lam.0 {
        for i in 2..=l as i64 {
            v *= BigRational::from_integer(i.into());
        }
    }
    for k in 1..=(n as i64 + lam.total() as i64) {
        v /= c + BigRational::from_integer(k.into());
    }
    Ok(v)
}

/// `∫_0^1 (1-s)^c f(s) ds` at a fixed degree.
fn jacobi_rule(deg: usize, c: f64) -> Result<Vec<(f64, f64)>> {
    let rule = GaussJacobi::new(deg, c, 0.0).map_err(|e| Error::Quadrature(e.to_string()))?;
    // nodes on [-1,1] with weight (1-x)^c; map to [0,1]
    let scale = 2f64.powf(-c - 1.0);
    Ok(rule.as_node_weight_pairs().iter().map(|&(x, w)| ((x + 1.0) / 2.0, w * scale)).collect())
}

/// Simplex integral `∫_{Σt<=1} ∏ t_j^{p_j} (1-Σt)^c dt` by stick-breaking tensor quadrature.
fn simplex_integral(p: &[f64], c: f64, deg: usize) -> Result<f64> {
    let n = p.len();
    let rule = jacobi_rule(deg, c)?;
    let mut total = 0.0;
    let mut idx = vec![0usize; n];
    loop {
        let mut weight = 1.0;
        let mut rest = 1.0;
        let mut integrand = 1.0;
        for (j, &i) in idx.iter().enumerate() {
            let (s, w) = rule[i];
            let t = rest * s;
            integrand *= t.powf(p[j]);
            // dt_j = rest ds_j; the (1-s_j)^c factor is inside w
            weight *= w * rest;
            rest *= 1.0 - s;
        }
        total += weight * integrand;
        let mut j = 0;
        while j < n {
            idx[j] += 1;
            if idx[j] < deg {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    Ok(total)
}

/// Independent quadrature of `∫ z^lam conj(z^mu) (1-|z|^2)^c dλ`.
///
/// Angles by the trapezoid rule, squared radii by stick-breaking Gauss-Jacobi
/// with the weight in the rule, refined until successive estimates agree.
pub fn quadrature_pairing(lam: &MultiIndex, mu: &MultiIndex, c: f64) -> Result<Complex64> {
    let n = lam.dim();
    BallMeasure::new(n, c)?;
    let mut angular = Complex64::new(1.0, 0.0);
    for j in 0..n {
        let d = lam.get(j) as i64 - mu.get(j) as i64;
        let k = 2 * d.unsigned_abs() as usize + 3;
        let sum: Complex64 = (0..k)
            .map(|i| Complex64::from_polar(1.0, d as f64 * 2.0 * PI * i as f64 / k as f64))
            .sum();
        angular *= sum * (2.0 * PI / k as f64);
    }
    // |z_j|^{λ_j+μ_j} r_j dr_j = t_j^{(λ_j+μ_j)/2} dt_j / 2
    let p: Vec<f64> = (0..n).map(|j| (lam.get(j) + mu.get(j)) as f64 / 2.0).collect();
    let radial = if angular.norm() < 1e-13 {
        // half-integer powers converge slowly; the product is negligible either way
        simplex_integral(&p, c, 16)?
    } else {
        adaptive(|deg| simplex_integral(&p, c, deg), n)?
    };
    Ok(angular * radial / 2f64.powi(n as i32))
}

fn adaptive(mut f: impl FnMut(usize) -> Result<f64>, dim: usize) -> Result<f64> {
    let mut deg = 4;
    let mut prev = f(deg)?;
    // the tensor grid has deg^dim points; keep it tractable
    let cap = if dim <= 1 { MAX_NODES } else { (MAX_NODES as f64).powf(1.0 / dim as f64).max(64.0) as usize };
    while deg * 2 <= cap {
        deg *= 2;
        let next = f(deg)?;
        if (next - prev).abs() <= QUAD_TOL * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!("no convergence with {deg} nodes per axis")))
}
