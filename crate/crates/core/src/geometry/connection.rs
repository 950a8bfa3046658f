//! Chern connection, torsion and curvature of a Hermitian metric.

use num_complex::Complex64;

use super::metric::{Matrix, MetricField};
use crate::error::Result;
use crate::field::{ScaledField, Slot, WRational};

pub type Tensor3 = Vec<Vec<Vec<WRational>>>;

/// Christoffel symbols `Gamma^i_{jk} = h^{i lbar} d_j h_{k lbar}`, stored as `gamma[i][j][k]`.
#[derive(Clone, Debug)]
pub struct ChernConnection {
    metric: MetricField,
    gamma: Tensor3,
}

fn zeros3(n: usize) -> Tensor3 {
    vec![vec![vec![WRational::zero(n); n]; n]; n]
}

impl ChernConnection {
    pub fn new(metric: &MetricField) -> Self {
        let n = metric.dim();
        let b = metric.base();
        let binv = metric.base_inv();
        // d_j (S b) = S (sigma_j b + d_j b); the S cancels against h^{-1}
        let sigma: Vec<WRational> = (0..n).map(|j| metric.log_scale(Slot::Holo(j))).collect();
        let mut db = vec![vec![vec![WRational::zero(n); n]; n]; n];
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    db[j][k][l] = b[k][l].d(j).add(&sigma[j].mul(&b[k][l]));
                }
            }
        }
        let mut gamma = zeros3(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = WRational::zero(n);
                    for l in 0..n {
                        acc = acc.add(&binv[i][l].mul(&db[j][k][l]));
                    }
                    gamma[i][j][k] = acc.simplified();
                }
            }
        }
        ChernConnection { metric: metric.clone(), gamma }
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn christoffel(&self) -> &Tensor3 {
        &self.gamma
    }

    /// `T^i_{jk} = Gamma^i_{jk} - Gamma^i_{kj}`.
    pub fn torsion(&self) -> Tensor3 {
        let n = self.metric.dim();
        let mut t = zeros3(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t[i][j][k] = self.gamma[i][j][k].sub(&self.gamma[i][k][j]).simplified();
                }
            }
        }
        t
    }

    /// `tau_j = sum_i T^i_{ji}`.
    pub fn torsion_form(&self) -> Vec<WRational> {
        let n = self.metric.dim();
        let t = self.torsion();
        (0..n)
            .map(|j| {
                let mut acc = WRational::zero(n);
                for i in 0..n {
                    acc = acc.add(&t[i][j][i]);
                }
                acc.simplified()
            })
            .collect()
    }

    /// `T_q^{pr} = conj(T^i_{jk}) h_{q ibar} h^{p jbar} h^{r kbar}`, stored as `[q][p][r]`.
    pub fn raised_torsion(&self) -> Vec<Vec<Vec<ScaledField>>> {
        let n = self.metric.dim();
        let t = self.torsion();
        let tc: Tensor3 = t.iter().map(|a| a.iter().map(|b| b.iter().map(|x| x.conj()).collect()).collect()).collect();
        let b = self.metric.base();
        let binv = self.metric.base_inv();
        // contract one index at a time: A[q][j][k] = sum_i conj(T^i_{jk}) b_{q i}
        let mut a = zeros3(n);
        for q in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = WRational::zero(n);
                    for i in 0..n {
                        acc = acc.add(&tc[i][j][k].mul(&b[q][i]));
                    }
                    a[q][j][k] = acc;
                }
            }
        }
        let mut c = zeros3(n);
        for q in 0..n {
            for p in 0..n {
                for k in 0..n {
                    let mut acc = WRational::zero(n);
                    for j in 0..n {
                        acc = acc.add(&a[q][j][k].mul(&binv[p][j]));
                    }
                    c[q][p][k] = acc;
                }
            }
        }
        let unit = ScaledField::power_only(self.metric.scale()).inv().expect("nonzero scale");
        let mut out = Vec::with_capacity(n);
        for q in 0..n {
            let mut row = Vec::with_capacity(n);
            for p in 0..n {
                let mut col = Vec::with_capacity(n);
                for r in 0..n {
                    let mut acc = WRational::zero(n);
                    for k in 0..n {
                        acc = acc.add(&c[q][p][k].mul(&binv[r][k]));
                    }
                    col.push(unit.mul_rational(&acc.simplified()).simplified());
                }
                row.push(col);
            }
            out.push(row);
        }
        out
    }

    /// Every component of the raised torsion is holomorphic.
    pub fn has_holomorphic_torsion(&self) -> bool {
        self.raised_torsion().iter().flatten().flatten().all(|x| x.is_holomorphic())
    }

    /// Rational part of `R_{i jbar k lbar} = -h_{p lbar} d_jbar Gamma^p_{ik}`,
    /// stored as `[i][j][k][l]`; the full tensor is `S` times this.
    pub fn curvature_values(&self) -> Vec<Vec<Vec<Vec<WRational>>>> {
        let n = self.metric.dim();
        let b = self.metric.base();
        let mut dg = vec![vec![vec![vec![WRational::zero(n); n]; n]; n]; n];
        for p in 0..n {
            for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        dg[p][i][k][j] = self.gamma[p][i][k].dbar(j);
                    }
                }
            }
        }
        let mut r = vec![vec![vec![vec![WRational::zero(n); n]; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = WRational::zero(n);
                        for p in 0..n {
                            acc = acc.add(&b[p][l].mul(&dg[p][i][k][j]));
                        }
                        r[i][j][k][l] = acc.neg().simplified();
                    }
                }
            }
        }
        r
    }

    pub fn curvature(&self) -> Vec<Vec<Vec<Vec<ScaledField>>>> {
        let s = self.metric.scale().clone();
        self.curvature_values()
            .into_iter()
            .map(|a| {
                a.into_iter()
                    .map(|b| b.into_iter().map(|c| c.into_iter().map(|x| ScaledField::from_parts(s.clone(), x)).collect()).collect())
                    .collect()
            })
            .collect()
    }

    /// The three Ricci traces `(R1_{i jbar}, R2_{k lbar}, R3_{k jbar})`.
    pub fn ricci(&self) -> Ricci {
        let n = self.metric.dim();
        let binv = self.metric.base_inv();
        let r = self.curvature_values();
        let mut r1 = vec![vec![WRational::zero(n); n]; n];
        let mut r2 = r1.clone();
        let mut r3 = r1.clone();
        for a in 0..n {
            for c in 0..n {
                let mut s1 = WRational::zero(n);
                let mut s2 = WRational::zero(n);
                let mut s3 = WRational::zero(n);
                for x in 0..n {
                    for y in 0..n {
                        // R1_{a cbar} = h^{x ybar} R_{a cbar x ybar}
                        s1 = s1.add(&binv[x][y].mul(&r[a][c][x][y]));
                        // R2_{a cbar} = h^{x ybar} R_{x ybar a cbar}
                        s2 = s2.add(&binv[x][y].mul(&r[x][y][a][c]));
                        // R3_{a cbar} = h^{x ybar} R_{x cbar a ybar}
                        s3 = s3.add(&binv[x][y].mul(&r[x][c][a][y]));
                    }
                }
                r1[a][c] = s1.simplified();
                r2[a][c] = s2.simplified();
                r3[a][c] = s3.simplified();
            }
        }
        Ricci { first: r1, second: r2, third: r3 }
    }

    /// `(s, s_hat)`: `s = h^{i jbar} R1_{i jbar}`, `s_hat = h^{k jbar} R3_{k jbar}`.
    pub fn scalar_curvatures(&self) -> (ScaledField, ScaledField) {
        let n = self.metric.dim();
        let binv = self.metric.base_inv();
        let ric = self.ricci();
        let mut s = WRational::zero(n);
        let mut sh = WRational::zero(n);
        for i in 0..n {
            for j in 0..n {
                s = s.add(&binv[i][j].mul(&ric.first[i][j]));
                sh = sh.add(&binv[i][j].mul(&ric.third[i][j]));
            }
        }
        let unit = ScaledField::power_only(self.metric.scale()).inv().expect("nonzero scale");
        (unit.mul_rational(&s.simplified()), unit.mul_rational(&sh.simplified()))
    }

    /// `R(xi, xibar, xi, xibar) / |xi|_h^4` at `z`.
    pub fn holomorphic_sectional_curvature(&self, z: &[Complex64], xi: &[Complex64]) -> Result<f64> {
        let n = self.metric.dim();
        let r = self.curvature_values();
        let s = self.metric.scale().eval(z)?;
        let mut num = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if r[i][j][k][l].num().is_zero() {
                            continue;
                        }
                        num += r[i][j][k][l].eval(z)? * xi[i] * xi[j].conj() * xi[k] * xi[l].conj();
                    }
                }
            }
        }
        let h = self.metric.eval(z)?;
        let mut norm = Complex64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                norm += h[j][k] * xi[j] * xi[k].conj();
            }
        }
        Ok((num * s / (norm * norm)).re)
    }
}

#[derive(Clone, Debug)]
pub struct Ricci {
    pub first: Matrix,
    pub second: Matrix,
    pub third: Matrix,
}
