//! Hermitian metrics `h_{j kbar}` with their inverse and determinant.
//!
//! A metric is `S * b_{j kbar}` where `b` is a matrix of rational functions and
//! `S` a product of fractional powers of real polynomials (trivial for every
//! rational metric). The stored inverse follows the convention
//! `sum_k h_{l kbar} h^{j kbar} = delta_{jl}`, i.e. it is the transpose of the
//! matrix inverse.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{GaussRat, PowerProduct, ScaledField, Slot, WRational};

pub type Matrix = Vec<Vec<WRational>>;

#[derive(Clone, Debug)]
pub struct MetricField {
    n: usize,
    scale: PowerProduct,
    base: Matrix,
    base_inv: Matrix,
    base_det: WRational,
}

fn det(m: &[Vec<WRational>]) -> WRational {
    let n = m.len();
    match n {
        0 => unreachable!(),
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        _ => {
            let nv = m[0][0].nvars();
            let mut acc = WRational::zero(nv);
            for c in 0..n {
                if m[0][c].num().is_zero() {
                    continue;
                }
                let t = m[0][c].mul(&det(&minor(m, 0, c)));
                acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

fn minor(m: &[Vec<WRational>], row: usize, col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Adjugate inverse, already transposed to the `h^{j kbar}` convention.
fn adjugate_inverse(m: &[Vec<WRational>]) -> Result<(Matrix, WRational)> {
    let n = m.len();
    let d = det(m).simplified();
    if d.is_identically_zero() {
        return Err(Error::Singular("metric determinant vanishes identically".into()));
    }
    let nv = m[0][0].nvars();
    let mut inv = vec![vec![WRational::zero(nv); n]; n];
    for j in 0..n {
        for k in 0..n {
            // (M^{-1})^T [j][k] = cofactor(j, k) / det
            let c = if n == 1 { WRational::one(nv) } else { det(&minor(m, j, k)) };
            let c = if (j + k) % 2 == 0 { c } else { c.neg() };
            inv[j][k] = c.div(&d)?.simplified();
        }
    }
    Ok((inv, d))
}

impl MetricField {
    /// Rational metric; inverse by adjugate (`n <= 4`).
    pub fn new(base: Matrix) -> Result<Self> {
        let n = base.len();
        Self::check_shape(&base)?;
        if n > 4 {
            return Err(Error::TooLarge { what: "adjugate dimension", size: n, limit: 4 });
        }
        let (base_inv, base_det) = adjugate_inverse(&base)?;
        let nv = base[0][0].nvars();
        Ok(MetricField { n, scale: PowerProduct::trivial(nv), base, base_inv, base_det })
    }

    /// `h_{j kbar} = a (delta_{jk} + b zbar_j z_k)`, inverted by Sherman-Morrison.
    pub fn rank_one(n: usize, a: &WRational, b: &WRational) -> Result<Self> {
        let one = WRational::one(n);
        let denom = one.add(&b.mul(&WRational::r(n))).simplified();
        if denom.is_identically_zero() || a.is_identically_zero() {
            return Err(Error::Singular("rank-one metric is degenerate".into()));
        }
        let c = b.div(&denom)?;
        let a_inv = a.inv()?;
        let mut base = vec![vec![WRational::zero(n); n]; n];
        let mut inv = vec![vec![WRational::zero(n); n]; n];
        for j in 0..n {
            for k in 0..n {
                let outer = WRational::zbar(n, j).mul(&WRational::z(n, k));
                let d = if j == k { one.clone() } else { WRational::zero(n) };
                base[j][k] = a.mul(&d.add(&b.mul(&outer))).simplified();
                let outer_t = WRational::z(n, j).mul(&WRational::zbar(n, k));
                inv[j][k] = a_inv.mul(&d.sub(&c.mul(&outer_t))).simplified();
            }
        }
        let det = a.pow(n as i32)?.mul(&denom).simplified();
        Ok(MetricField { n, scale: PowerProduct::trivial(n), base, base_inv: inv, base_det: det })
    }

    /// Rational metric with a caller-supplied inverse, verified symbolically.
    pub fn with_inverse(base: Matrix, base_inv: Matrix) -> Result<Self> {
        Self::check_shape(&base)?;
        Self::check_shape(&base_inv)?;
        let n = base.len();
        let nv = base[0][0].nvars();
        let base_det = if n <= 4 { det(&base).simplified() } else { WRational::zero(nv) };
        let m = MetricField { n, scale: PowerProduct::trivial(nv), base, base_inv, base_det };
        if !m.inverse_is_exact() {
            return Err(Error::Singular("supplied inverse does not invert the metric".into()));
        }
        Ok(m)
    }

    fn check_shape(m: &Matrix) -> Result<()> {
        let n = m.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty metric".into()));
        }
        for row in m {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for x in row {
                if x.nvars() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: x.nvars() });
                }
            }
        }
        Ok(())
    }

    /// Multiply by a scalar field `c`: `g = c h`.
    pub fn scaled_by(&self, c: &ScaledField) -> Result<Self> {
        let total = ScaledField::power_only(&self.scale).mul(c);
        let v = total.value().clone();
        let v_inv = v.inv()?;
        let base = self.base.iter().map(|r| r.iter().map(|x| x.mul(&v).simplified()).collect()).collect();
        let base_inv =
            self.base_inv.iter().map(|r| r.iter().map(|x| x.mul(&v_inv).simplified()).collect()).collect();
        let base_det = self.base_det.mul(&v.pow(self.n as i32)?).simplified();
        Ok(MetricField { n: self.n, scale: total.scale().clone(), base, base_inv, base_det })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> &PowerProduct {
        &self.scale
    }

    pub fn is_rational(&self) -> bool {
        self.scale.is_trivial()
    }

    pub fn base(&self) -> &Matrix {
        &self.base
    }

    pub fn base_inv(&self) -> &Matrix {
        &self.base_inv
    }

    /// `h_{j kbar}`.
    pub fn entry(&self, j: usize, k: usize) -> ScaledField {
        ScaledField::from_parts(self.scale.clone(), self.base[j][k].clone())
    }

    /// `h^{j kbar}`.
    pub fn inverse_entry(&self, j: usize, k: usize) -> ScaledField {
        let inv_scale = self.scale.factors().iter().map(|(f, q)| (f.clone(), -q.clone())).collect();
        ScaledField::with_powers(self.base_inv[j][k].clone(), inv_scale).expect("validated bases")
    }

    pub fn det(&self) -> ScaledField {
        let p = self.scale.factors().iter().map(|(f, q)| (f.clone(), q * num_rational::BigRational::from_integer((self.n as i64).into()))).collect();
        ScaledField::with_powers(self.base_det.clone(), p).expect("validated bases")
    }

    /// Rational entries when the scale is trivial.
    pub fn rational_entry(&self, j: usize, k: usize) -> Option<&WRational> {
        if self.is_rational() {
            Some(&self.base[j][k])
        } else {
            None
        }
    }

    /// Whether `|lambda|^2 h(lambda z) = h(z)` at each of `points`, exactly.
    pub fn is_dilation_invariant(&self, lambda: &GaussRat, points: &[Vec<GaussRat>]) -> Result<bool> {
        if !self.is_rational() {
            return Err(Error::InvalidParameter("dilation check needs rational entries".into()));
        }
        let l2 = GaussRat::real(lambda.norm_sqr());
        for z in points {
            let scaled: Vec<GaussRat> = z.iter().map(|x| x * lambda).collect();
            for row in &self.base {
                for e in row {
                    if &l2 * &e.eval_exact(&scaled)? != e.eval_exact(z)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `d log S` along `slot`.
    pub fn log_scale(&self, slot: Slot) -> WRational {
        self.scale.log_derivative(slot)
    }

    /// `h h_inv^T == I` symbolically.
    pub fn inverse_is_exact(&self) -> bool {
        let n = self.n;
        for l in 0..n {
            for j in 0..n {
                let mut acc = WRational::zero(n);
                for k in 0..n {
                    acc = acc.add(&self.base[l][k].mul(&self.base_inv[j][k]));
                }
                let target = if j == l { WRational::one(n) } else { WRational::zero(n) };
                if !acc.equals(&target) {
                    return false;
                }
            }
        }
        true
    }

    /// `h_{j kbar} = conj(h_{k jbar})`.
    pub fn is_hermitian(&self) -> bool {
        let n = self.n;
        (0..n).all(|j| (0..n).all(|k| self.base[j][k].equals(&self.base[k][j].conj())))
    }

    /// Numeric metric matrix at `z`.
    pub fn eval(&self, z: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        let s = self.scale.eval(z)?;
        self.base.iter().map(|r| r.iter().map(|x| Ok(x.eval(z)? * s)).collect()).collect()
    }

    /// Numeric `h^{j kbar}` at `z`.
    pub fn eval_inverse(&self, z: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
        let s = self.scale.eval(z)?;
        self.base_inv.iter().map(|r| r.iter().map(|x| Ok(x.eval(z)? / s)).collect()).collect()
    }

    /// Entrywise symbolic equality of two metrics.
    pub fn equals(&self, o: &Self) -> bool {
        if self.n != o.n {
            return false;
        }
        (0..self.n).all(|j| (0..self.n).all(|k| self.entry(j, k).equals(&o.entry(j, k))))
    }
}

/// `delta_{jk}` as rational functions in `n` variables.
pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|j| (0..n).map(|k| if j == k { WRational::one(n) } else { WRational::zero(n) }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_r(n: usize) -> WRational {
        WRational::one(n).sub(&WRational::r(n))
    }

    fn half_hyperbolic_direct(n: usize) -> Matrix {
        let d = one_minus_r(n);
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let t = WRational::zbar(n, j).mul(&WRational::z(n, k)).div(&d).unwrap();
                        if j == k {
                            t.add(&WRational::one(n))
                        } else {
                            t
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn adjugate_and_sherman_morrison_agree() {
        for n in 1..=3 {
            let adj = MetricField::new(half_hyperbolic_direct(n)).unwrap();
            let sm = MetricField::rank_one(n, &WRational::one(n), &one_minus_r(n).inv().unwrap()).unwrap();
            assert!(adj.inverse_is_exact());
            assert!(sm.inverse_is_exact());
            for j in 0..n {
                for k in 0..n {
                    assert!(adj.base_inv()[j][k].equals(&sm.base_inv()[j][k]));
                    // h^{j kbar} = delta - z_j zbar_k
                    let mut e = WRational::z(n, j).mul(&WRational::zbar(n, k)).neg();
                    if j == k {
                        e = e.add(&WRational::one(n));
                    }
                    assert!(sm.base_inv()[j][k].equals(&e));
                }
            }
            assert!(adj.det().value().equals(&one_minus_r(n).inv().unwrap()));
        }
    }

    #[test]
    fn singular_metric_is_rejected() {
        let n = 2;
        let z = WRational::z(n, 0);
        let m = vec![vec![z.clone(), z.clone()], vec![z.clone(), z]];
        assert!(matches!(MetricField::new(m), Err(Error::Singular(_))));
    }
}
