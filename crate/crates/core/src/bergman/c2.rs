//! Weighted norms of monomials for the two-dimensional example, with
//! measure `e^{-psi} det(h) dλ` and `psi = r1 d chi / d r1`.

use std::f64::consts::PI;

use gauss_quad::GaussLaguerre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::integrals::QUAD_TOL;
use crate::catalog::{make_family, multiradial_weight, FamilySpec};
use crate::error::{Error, Result};
use crate::field::{ScaledField, WRational};

/// `z1^k z2^l` has finite norm.
pub fn c2_membership(k: u32, l: u32) -> bool {
    k >= 2 && l + 2 <= k
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum C2Norm {
    Finite { value: f64, nodes: usize },
    /// The `r1` integrand behaves like `r1^exponent` near the origin.
    Divergent { exponent: i64 },
}

impl C2Norm {
    pub fn is_finite(&self) -> bool {
        matches!(self, C2Norm::Finite { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            C2Norm::Finite { value, .. } => Some(*value),
            C2Norm::Divergent { .. } => None,
        }
    }
}

/// Weight and volume density of the example, taken from the catalog.
pub struct C2Measure {
    psi: WRational,
    det: ScaledField,
}

impl C2Measure {
    pub fn new() -> Result<Self> {
        let family = make_family(&FamilySpec::new("c2_example", 2))?;
        let psi = multiradial_weight(&family, "0", &["1".to_string(), "0".to_string()])?;
        Ok(C2Measure { psi, det: family.metric.det() })
    }

    /// `(det h, psi)` at `|z1|^2 = s`, `|z2|^2 = t`.
    pub fn density(&self, s: f64, t: f64) -> Result<(f64, f64)> {
        let z = [Complex64::new(s.sqrt(), 0.0), Complex64::new(t.sqrt(), 0.0)];
        Ok((self.det.eval(&z)?.re, self.psi.eval(&z)?.re))
    }
}

/// Exponent of `r1` in the integrand near `r1 = 0` after the `r2` integral.
pub fn c2_origin_exponent(k: u32, l: u32) -> i64 {
    2 * k as i64 - 2 * l as i64 - 3
}

/// `||z1^k z2^l||^2`, or the divergence exponent.
///
/// With `s = r1^2`, `t = u/s`, both axes become Gauss-Laguerre integrals:
/// `u^l e^{-u}` inside and `s^{k-l-2} e^{-s}` outside.
pub fn c2_norm(k: u32, l: u32) -> Result<C2Norm> {
    let e = c2_origin_exponent(k, l);
    if e < 0 {
        return Ok(C2Norm::Divergent { exponent: e });
    }
    let mu = C2Measure::new()?;
    let a = (k - l - 2) as f64;
    let inner = GaussLaguerre::new(8, l as f64).map_err(|e| Error::Quadrature(e.to_string()))?;
    let eval = |deg: usize| -> Result<f64> {
        let outer = GaussLaguerre::new(deg, a).map_err(|e| Error::Quadrature(e.to_string()))?;
        let mut total = 0.0;
        for &(s, ws) in outer.as_node_weight_pairs() {
            let mut inn = 0.0;
            for &(u, wu) in inner.as_node_weight_pairs() {
                let (det, psi) = mu.density(s, u / s)?;
                inn += wu * det * (u - psi + s).exp();
            }
            // s^k t^l dt = s^{k-l-1} u^l du, against s^a e^{-s}
            total += ws * s.powi(k as i32 - l as i32 - 1 - a as i32) * inn;
        }
        Ok(PI * PI * total)
    };
    let mut deg = 16;
    let mut prev = eval(deg)?;
    while deg < 512 {
        deg *= 2;
        let next = eval(deg)?;
        if (next - prev).abs() <= QUAD_TOL * next.abs() {
            return Ok(C2Norm::Finite { value: next, nodes: deg });
        }
        prev = next;
    }
    Err(Error::Quadrature(format!("c2 norm ({k}, {l}) did not settle")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_boundary() {
        assert!(c2_membership(2, 0));
        assert!(!c2_membership(0, 3));
        assert!(c2_membership(5, 3));
        assert!(!c2_membership(5, 4));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(c2_norm(0, 1).unwrap(), C2Norm::Divergent { exponent: -5 });
        assert!(c2_norm(2, 0).unwrap().value().unwrap() > 0.0);
        assert!(c2_norm(3, 1).unwrap().is_finite());
    }
}
