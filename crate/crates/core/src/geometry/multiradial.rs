//! Multi-radial potentials `chi(r_1, ..., r_n)` with `r_k = |z_k|^2`.
//!
//! The metric is `h_{j kbar} = a_j delta_{jk} + zbar_j z_k b_{jk}` with
//! `a_j = d chi / d r_j` and `b_{jk} = d^2 chi / d r_j d r_k`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::metric::{Matrix, MetricField};
use crate::error::{Error, Result};
use crate::field::{parse_rational, GaussRat, WRational};

/// One-variable profiles `f(t)` with known derivatives.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialProfile {
    /// `sum c_i t^i`, coefficients as `"p/q"` strings.
    Polynomial { coeffs: Vec<String> },
    /// `-log(1 - t)`.
    NegLogOneMinus,
    /// `log(1 + t)`.
    LogOnePlus,
}

impl RadialProfile {
    pub fn polynomial(coeffs: &[BigRational]) -> Self {
        RadialProfile::Polynomial { coeffs: coeffs.iter().map(crate::field::format_rational).collect() }
    }

    fn coeffs(&self) -> Result<Vec<BigRational>> {
        match self {
            RadialProfile::Polynomial { coeffs } => coeffs.iter().map(|c| parse_rational(c)).collect(),
            _ => Ok(Vec::new()),
        }
    }

    fn horner(c: &[BigRational], t: &WRational) -> WRational {
        let n = t.nvars();
        let mut acc = WRational::zero(n);
        for x in c.iter().rev() {
            acc = acc.mul(t).add(&WRational::constant(n, GaussRat::real(x.clone())));
        }
        acc
    }

    fn deriv_coeffs(c: &[BigRational]) -> Vec<BigRational> {
        c.iter().enumerate().skip(1).map(|(i, x)| x * BigRational::from_integer((i as i64).into())).collect()
    }

    /// `f(t)` when rational.
    pub fn value(&self, t: &WRational) -> Result<Option<WRational>> {
        Ok(match self {
            RadialProfile::Polynomial { .. } => Some(Self::horner(&self.coeffs()?, t)),
            _ => None,
        })
    }

    pub fn d1(&self, t: &WRational) -> Result<WRational> {
        let n = t.nvars();
        match self {
            RadialProfile::Polynomial { .. } => Ok(Self::horner(&Self::deriv_coeffs(&self.coeffs()?), t)),
            RadialProfile::NegLogOneMinus => WRational::one(n).sub(t).inv(),
            RadialProfile::LogOnePlus => WRational::one(n).add(t).inv(),
        }
    }

    pub fn d2(&self, t: &WRational) -> Result<WRational> {
        let n = t.nvars();
        match self {
            RadialProfile::Polynomial { .. } => {
                let c = Self::deriv_coeffs(&Self::deriv_coeffs(&self.coeffs()?));
                Ok(Self::horner(&c, t))
            }
            RadialProfile::NegLogOneMinus => WRational::one(n).sub(t).pow(-2),
            RadialProfile::LogOnePlus => Ok(WRational::one(n).add(t).pow(-2)?.neg()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultiRadialPotential {
    n: usize,
    value: Option<WRational>,
    grad: Vec<WRational>,
    hess: Vec<Vec<WRational>>,
}

impl MultiRadialPotential {
    /// From `chi` itself, which must depend on `z` only through `r_1..r_n`.
    pub fn from_function(chi: &WRational) -> Result<Self> {
        let n = chi.nvars();
        let grad: Vec<WRational> = (0..n).map(|j| Ok(chi.radial_derivative(j)?.simplified())).collect::<Result<_>>()?;
        let hess = grad
            .iter()
            .map(|g| (0..n).map(|k| Ok(g.radial_derivative(k)?.simplified())).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(MultiRadialPotential { n, value: Some(chi.clone()), grad, hess })
    }

    /// From the radial gradient `d chi / d r_j` when `chi` itself is not rational.
    pub fn from_gradient(grad: Vec<WRational>) -> Result<Self> {
        let n = grad.len();
        let hess: Vec<Vec<WRational>> = grad
            .iter()
            .map(|g| (0..n).map(|k| Ok(g.radial_derivative(k)?.simplified())).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for j in 0..n {
            for k in j + 1..n {
                if !hess[j][k].equals(&hess[k][j]) {
                    return Err(Error::InvalidParameter("radial gradient is not closed".into()));
                }
            }
        }
        Ok(MultiRadialPotential { n, value: None, grad, hess })
    }

    /// `chi = sum_j F_j(r_j)`.
    pub fn decoupled(profiles: &[RadialProfile]) -> Result<Self> {
        let n = profiles.len();
        let mut grad = Vec::with_capacity(n);
        let mut hess = vec![vec![WRational::zero(n); n]; n];
        let mut value = Some(WRational::zero(n));
        for (j, f) in profiles.iter().enumerate() {
            let t = WRational::r_k(n, j);
            grad.push(f.d1(&t)?);
            hess[j][j] = f.d2(&t)?;
            value = match (value, f.value(&t)?) {
                (Some(v), Some(x)) => Some(v.add(&x)),
                _ => None,
            };
        }
        Ok(MultiRadialPotential { n, value, grad, hess })
    }

    /// `chi = prod_j G_j(r_j)` for polynomial profiles.
    pub fn product(profiles: &[RadialProfile]) -> Result<Self> {
        let n = profiles.len();
        let mut chi = WRational::one(n);
        for (j, g) in profiles.iter().enumerate() {
            let v = g
                .value(&WRational::r_k(n, j))?
                .ok_or_else(|| Error::InvalidParameter("product factors must be polynomial".into()))?;
            chi = chi.mul(&v);
        }
        Self::from_function(&chi)
    }

    /// `chi = f(|z|^2)`.
    pub fn radial(n: usize, f: &RadialProfile) -> Result<Self> {
        let r = WRational::r(n);
        let d1 = f.d1(&r)?;
        let d2 = f.d2(&r)?;
        Ok(MultiRadialPotential {
            n,
            value: f.value(&r)?,
            grad: vec![d1; n],
            hess: vec![vec![d2; n]; n],
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> Option<&WRational> {
        self.value.as_ref()
    }

    pub fn gradient(&self) -> &[WRational] {
        &self.grad
    }

    pub fn hessian(&self) -> &[Vec<WRational>] {
        &self.hess
    }

    /// Radial data at a point.
    pub fn table_at(&self, z: &[Complex64]) -> Result<RadialTable> {
        let re = |x: &WRational| -> Result<f64> { Ok(x.eval(z)?.re) };
        Ok(RadialTable {
            a: self.grad.iter().map(re).collect::<Result<_>>()?,
            b: self.hess.iter().map(|row| row.iter().map(re).collect::<Result<_>>()).collect::<Result<_>>()?,
            r: z.iter().map(|c| c.norm_sqr()).collect(),
        })
    }
}

/// `h_{j kbar} = a_j delta_{jk} + zbar_j z_k b_{jk}`.
pub fn metric_from_potential(p: &MultiRadialPotential) -> Result<MetricField> {
    let n = p.n;
    let mut m: Matrix = vec![vec![WRational::zero(n); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut e = WRational::zbar(n, j).mul(&WRational::z(n, k)).mul(&p.hess[j][k]);
            if j == k {
                e = e.add(&p.grad[j]);
            }
            m[j][k] = e.simplified();
        }
    }
    MetricField::new(m)
}

/// Values of `a_j`, `b_{jk}` and `r_k` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialTable {
    pub a: Vec<f64>,
    pub b: Vec<Vec<f64>>,
    pub r: Vec<f64>,
}

/// Row `V_{j.}` in `h^{j kbar} = a_j^{-1} delta_{jk} + V_{jk} z_j zbar_k`.
///
/// Solves `a_l V_{jl} + sum_k r_k b_{lk} V_{jk} = -b_{lj} / a_j` for `l = 1..n`.
pub fn multiradial_inverse_correction(t: &RadialTable, j: usize) -> Result<Vec<f64>> {
    let n = t.a.len();
    if j >= n || t.b.len() != n || t.r.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: j.max(t.b.len()).max(t.r.len()) });
    }
    if t.a.iter().any(|x| *x == 0.0) {
        return Err(Error::Singular("vanishing radial derivative".into()));
    }
    let m = DMatrix::from_fn(n, n, |l, k| if l == k { t.a[l] } else { 0.0 } + t.r[k] * t.b[l][k]);
    let rhs = DVector::from_fn(n, |l, _| -t.b[l][j] / t.a[j]);
    let lu = m.clone().lu();
    let scale = m.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    if lu.determinant().abs() <= 1e-13 * scale.powi(n as i32) {
        return Err(Error::Singular("radial correction system is singular".into()));
    }
    let v = lu.solve(&rhs).ok_or_else(|| Error::Singular("radial correction system".into()))?;
    Ok(v.iter().copied().collect())
}

/// Full numeric `h^{j kbar}` assembled from the corrections.
pub fn assemble_inverse(t: &RadialTable, z: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let n = t.a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let v = multiradial_inverse_correction(t, j)?;
        for k in 0..n {
            let d = if j == k { 1.0 / t.a[j] } else { 0.0 };
            out[j][k] = Complex64::new(d, 0.0) + v[k] * z[j] * z[k].conj();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn c2_potential() -> MultiRadialPotential {
        // r1^2/4 + r1 r2 + r1 + r2
        let n = 2;
        let r1 = WRational::r_k(n, 0);
        let r2 = WRational::r_k(n, 1);
        let chi = r1.mul(&r1).scale(&GaussRat::real(rat(1, 4))).add(&r1.mul(&r2)).add(&r1).add(&r2);
        MultiRadialPotential::from_function(&chi).unwrap()
    }

    #[test]
    fn metric_matches_mixed_partials_of_polynomial_potential() {
        let p = c2_potential();
        let h = metric_from_potential(&p).unwrap();
        let chi = p.value().unwrap();
        for j in 0..2 {
            for k in 0..2 {
                assert!(h.base()[j][k].equals(&chi.d(j).dbar(k)));
            }
        }
    }

    #[test]
    fn correction_reproduces_symbolic_inverse() {
        let p = c2_potential();
        let h = metric_from_potential(&p).unwrap();
        let z = [Complex64::new(0.3, -0.2), Complex64::new(-0.5, 0.4)];
        let t = p.table_at(&z).unwrap();
        let inv = assemble_inverse(&t, &z).unwrap();
        let exact = h.eval_inverse(&z).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                assert!((inv[j][k] - exact[j][k]).norm() < 1e-12, "{j}{k}");
            }
        }
    }

    #[test]
    fn singular_table_is_rejected() {
        let t = RadialTable { a: vec![1.0, 0.0], b: vec![vec![0.0; 2]; 2], r: vec![0.1, 0.1] };
        assert!(multiradial_inverse_correction(&t, 0).is_err());
    }
}
