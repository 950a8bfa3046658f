//! Conformal changes `g = phi^{-1} h` of a Kahler metric `h`.

use super::connection::ChernConnection;
use super::metric::MetricField;
use super::weight::raise;
use crate::error::Result;
use crate::field::{ScaledField, Slot, WRational};

#[derive(Clone, Debug)]
pub struct ConformalPair {
    pub kahler: MetricField,
    pub phi: ScaledField,
    pub metric: MetricField,
}

/// `g = phi^{-1} h`.
pub fn conformal_metric(h: &MetricField, phi: &ScaledField) -> Result<ConformalPair> {
    let metric = h.scaled_by(&phi.inv()?)?;
    Ok(ConformalPair { kahler: h.clone(), phi: phi.clone(), metric })
}

/// The three statements that must agree for a conformally Kahler metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tripod {
    pub torsion_holomorphic: bool,
    pub torsion_sharp_holomorphic: bool,
    pub dbar_phi_sharp_holomorphic: bool,
}

impl Tripod {
    pub fn agrees(&self) -> bool {
        self.torsion_holomorphic == self.torsion_sharp_holomorphic
            && self.torsion_sharp_holomorphic == self.dbar_phi_sharp_holomorphic
    }
}

impl ConformalPair {
    pub fn dim(&self) -> usize {
        self.kahler.dim()
    }

    /// `sigma_k = -d_k log phi`.
    pub fn sigma(&self, slot: Slot) -> Result<WRational> {
        Ok(self.phi.log_derivative(slot)?.neg())
    }

    /// `(dbar phi)^sharp` with respect to the Kahler metric.
    pub fn dbar_phi_sharp(&self) -> Vec<ScaledField> {
        let n = self.dim();
        let comps: Vec<ScaledField> = (0..n).map(|k| self.phi.wirtinger(Slot::Anti(k))).collect();
        // phi_kbar = S v_k with a common power scale S
        let scale = comps.iter().find(|c| !c.is_identically_zero()).map(|c| c.scale().clone());
        match scale {
            None => (0..n).map(|_| ScaledField::rational(WRational::zero(n))).collect(),
            Some(s) => {
                let vals: Vec<WRational> = comps.iter().map(|c| c.value().clone()).collect();
                let unit = ScaledField::power_only(&s);
                raise(&self.kahler, &vals).into_iter().map(|x| x.mul(&unit)).collect()
            }
        }
    }

    pub fn tripod(&self) -> Tripod {
        let conn = ChernConnection::new(&self.metric);
        let tau = conn.torsion_form();
        let cov: Vec<WRational> = tau.iter().map(|t| t.conj()).collect();
        Tripod {
            torsion_holomorphic: conn.has_holomorphic_torsion(),
            torsion_sharp_holomorphic: raise(&self.metric, &cov).iter().all(|x| x.is_holomorphic()),
            dbar_phi_sharp_holomorphic: self.dbar_phi_sharp().iter().all(|x| x.is_holomorphic()),
        }
    }

    /// Torsion of `g` equals `sigma_k delta^j_l - sigma_l delta^j_k` and
    /// `tau^g = (n-1) sigma`.
    pub fn conformal_law_holds(&self) -> Result<bool> {
        let n = self.dim();
        let conn = ChernConnection::new(&self.metric);
        let t = conn.torsion();
        let sigma: Vec<WRational> = (0..n).map(|k| self.sigma(Slot::Holo(k))).collect::<Result<_>>()?;
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut e = WRational::zero(n);
                    if j == l {
                        e = e.add(&sigma[k]);
                    }
                    if j == k {
                        e = e.sub(&sigma[l]);
                    }
                    if !t[j][k][l].equals(&e) {
                        return Ok(false);
                    }
                }
            }
        }
        let tau = conn.torsion_form();
        let m = WRational::from_int(n, n as i64 - 1);
        Ok(tau.iter().zip(&sigma).all(|(a, s)| a.equals(&s.mul(&m))))
    }
}
