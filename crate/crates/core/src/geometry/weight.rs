//! Real weights `psi`, stored through their `dbar` covector `psi_kbar`.

use super::connection::ChernConnection;
use super::metric::MetricField;
use crate::error::{Error, Result};
use crate::field::{ScaledField, WPoly, WRational};

#[derive(Clone, Debug)]
pub struct WeightField {
    dbar: Vec<WRational>,
}

impl WeightField {
    /// `psi` given explicitly as a real rational function.
    pub fn from_potential(psi: &WRational) -> Result<Self> {
        if !psi.equals(&psi.conj()) {
            return Err(Error::InvalidParameter("weight must be real-valued".into()));
        }
        let n = psi.nvars();
        Ok(WeightField { dbar: (0..n).map(|k| psi.dbar(k).simplified()).collect() })
    }

    /// `psi = B log f` (plus an irrelevant constant) for a real polynomial `f`.
    pub fn log_of(f: &WRational, b: &WRational) -> Result<Self> {
        if !f.equals(&f.conj()) {
            return Err(Error::InvalidParameter("logarithm of a non-real function".into()));
        }
        let n = f.nvars();
        let dbar = (0..n).map(|k| Ok(f.dbar(k).div(f)?.mul(b).simplified())).collect::<Result<_>>()?;
        Ok(WeightField { dbar })
    }

    /// Raw components; rejected unless `d_lbar psi_kbar = d_kbar psi_lbar`.
    pub fn from_components(dbar: Vec<WRational>) -> Result<Self> {
        let w = WeightField { dbar };
        if !w.is_closed() {
            return Err(Error::NotClosed);
        }
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.dbar.len()
    }

    pub fn components(&self) -> &[WRational] {
        &self.dbar
    }

    pub fn add(&self, o: &Self) -> Self {
        WeightField { dbar: self.dbar.iter().zip(&o.dbar).map(|(a, b)| a.add(b).simplified()).collect() }
    }

    pub fn is_closed(&self) -> bool {
        let n = self.dbar.len();
        (0..n).all(|k| (k + 1..n).all(|l| self.dbar[k].dbar(l).equals(&self.dbar[l].dbar(k))))
    }
}

/// `X^j = h^{j kbar} psi_kbar`.
pub fn gradient_field(h: &MetricField, w: &WeightField) -> Vec<ScaledField> {
    raise(h, w.components())
}

/// Raise a `(0,1)` covector with the inverse metric.
pub fn raise(h: &MetricField, cov: &[WRational]) -> Vec<ScaledField> {
    let n = h.dim();
    let binv = h.base_inv();
    let unit = ScaledField::power_only(h.scale()).inv().expect("nonzero scale");
    (0..n)
        .map(|j| {
            let mut acc = WRational::zero(n);
            for k in 0..n {
                acc = acc.add(&binv[j][k].mul(&cov[k]));
            }
            unit.mul_rational(&acc.simplified()).simplified()
        })
        .collect()
}

/// `(dbar psi - taubar)^sharp` with `tau_kbar = conj(tau_k)`.
pub fn gradient_minus_torsion(h: &MetricField, w: &WeightField) -> Vec<ScaledField> {
    let tau = ChernConnection::new(h).torsion_form();
    let cov: Vec<WRational> = w.components().iter().zip(&tau).map(|(p, t)| p.sub(&t.conj())).collect();
    raise(h, &cov)
}

/// `taubar^sharp`.
pub fn torsion_sharp(h: &MetricField) -> Vec<ScaledField> {
    let tau = ChernConnection::new(h).torsion_form();
    let cov: Vec<WRational> = tau.iter().map(|t| t.conj()).collect();
    raise(h, &cov)
}

pub fn is_real_holomorphic_gradient(h: &MetricField, w: &WeightField) -> bool {
    gradient_field(h, w).iter().all(|x| x.is_holomorphic())
}

pub fn is_gradient_minus_torsion_holomorphic(h: &MetricField, w: &WeightField) -> bool {
    gradient_minus_torsion(h, w).iter().all(|x| x.is_holomorphic())
}

/// `c * sum_j z_j d_j` as components.
pub fn euler_field(n: usize, c: &WRational) -> Vec<ScaledField> {
    (0..n).map(|j| ScaledField::rational(WRational::z(n, j).mul(c))).collect()
}

pub fn fields_equal(a: &[ScaledField], b: &[ScaledField]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.equals(y))
}

/// `1 - |z|^2`.
pub fn one_minus_r(n: usize) -> WRational {
    WRational::from_poly(WPoly::one(n).sub(&WPoly::r(n)))
}

/// `1 + |z|^2`.
pub fn one_plus_r(n: usize) -> WRational {
    WRational::from_poly(WPoly::one(n).add(&WPoly::r(n)))
}
