//! Rational functions times fractional powers of real polynomials.
//!
//! A `ScaledField` is `value * prod f_i^{q_i}` with every `q_i` in `(0, 1)`.
//! Integer parts of exponents are folded into `value`, so two fields with the
//! same fractional factors can be added directly. Only the logarithmic
//! derivative of the power product enters differentiation, and that is rational.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::gauss::{rat_to_f64, GaussRat};
use super::poly::{Slot, WPoly};
use super::rational::WRational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PowerProduct {
    n: usize,
    factors: Vec<(WPoly, BigRational)>,
}

impl PowerProduct {
    pub fn trivial(n: usize) -> Self {
        PowerProduct { n, factors: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(WPoly, BigRational)] {
        &self.factors
    }

    /// `log` derivative `sum q_i (d f_i) / f_i`.
    pub fn log_derivative(&self, slot: Slot) -> WRational {
        let mut acc = WRational::zero(self.n);
        for (f, q) in &self.factors {
            let df = f.derivative(slot);
            if df.is_zero() {
                continue;
            }
            let t = WRational::from_poly(df)
                .div(&WRational::from_poly(f.clone()))
                .expect("nonzero factor")
                .scale(&GaussRat::real(q.clone()));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<f64> {
        let mut acc = 1.0;
        for (f, q) in &self.factors {
            let v = f.eval(z);
            if v.re <= 0.0 || v.im.abs() > 1e-12 * v.re.abs().max(1.0) {
                return Err(Error::Pole);
            }
            acc *= v.re.powf(rat_to_f64(q));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct ScaledField {
    scale: PowerProduct,
    value: WRational,
}

impl ScaledField {
    pub fn rational(value: WRational) -> Self {
        let n = value.nvars();
        ScaledField { scale: PowerProduct::trivial(n), value }
    }

    /// `value * prod f_i^{q_i}` for arbitrary rational exponents. Bases must be
    /// real-valued and are evaluated only where they are positive.
    pub fn with_powers(value: WRational, powers: Vec<(WPoly, BigRational)>) -> Result<Self> {
        let n = value.nvars();
        let mut value = value;
        let mut factors: Vec<(WPoly, BigRational)> = Vec::new();
        for (f, q) in powers {
            if f.is_constant() {
                return Err(Error::InvalidParameter("power base must be nonconstant".into()));
            }
            if f.conj() != f {
                return Err(Error::InvalidParameter("power base must be real-valued".into()));
            }
            match factors.iter_mut().find(|(g, _)| *g == f) {
                Some(slot) => slot.1 += q,
                None => factors.push((f, q)),
            }
        }
        let mut kept = Vec::new();
        for (f, q) in factors {
            let fl = q.floor();
            let frac = &q - &fl;
            let k = fl.to_integer().to_i32().ok_or_else(|| Error::InvalidParameter("exponent too large".into()))?;
            if k != 0 {
                value = value.mul(&WRational::from_poly(f.clone()).pow(k)?).simplified();
            }
            if !frac.is_zero() {
                kept.push((f, frac));
            }
        }
        Ok(ScaledField { scale: PowerProduct { n, factors: kept }, value })
    }

    /// Reassemble from a normalized power product and a rational value.
    pub fn from_parts(scale: PowerProduct, value: WRational) -> Self {
        ScaledField { scale, value }
    }

    /// The power product alone, as a field with value one.
    pub fn power_only(scale: &PowerProduct) -> Self {
        ScaledField { scale: scale.clone(), value: WRational::one(scale.n) }
    }

    pub fn nvars(&self) -> usize {
        self.value.nvars()
    }

    pub fn scale(&self) -> &PowerProduct {
        &self.scale
    }

    pub fn value(&self) -> &WRational {
        &self.value
    }

    pub fn to_rational(&self) -> Option<&WRational> {
        if self.scale.is_trivial() {
            Some(&self.value)
        } else {
            None
        }
    }

    fn same_scale(&self, o: &Self) -> bool {
        self.scale.factors.len() == o.scale.factors.len()
            && self.scale.factors.iter().all(|x| o.scale.factors.contains(x))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.value.num().is_zero() {
            return Ok(o.clone());
        }
        if o.value.num().is_zero() {
            return Ok(self.clone());
        }
        if !self.same_scale(o) {
            return Err(Error::InvalidParameter("adding fields with different power scales".into()));
        }
        Ok(ScaledField { scale: self.scale.clone(), value: self.value.add(&o.value) })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ScaledField { scale: self.scale.clone(), value: self.value.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut powers = self.scale.factors.clone();
        powers.extend(o.scale.factors.iter().cloned());
        Self::with_powers(self.value.mul(&o.value), powers).expect("bases already validated")
    }

    pub fn mul_rational(&self, r: &WRational) -> Self {
        ScaledField { scale: self.scale.clone(), value: self.value.mul(r) }
    }

    /// Reciprocal power product times the reciprocal value.
    pub fn inv(&self) -> Result<Self> {
        let powers = self.scale.factors.iter().map(|(f, q)| (f.clone(), -q.clone())).collect();
        Self::with_powers(self.value.inv()?, powers)
    }

    pub fn simplified(mut self) -> Self {
        self.value.simplify();
        self
    }

    pub fn conj(&self) -> Self {
        ScaledField { scale: self.scale.clone(), value: self.value.conj() }
    }

    /// `d(S v) = S (dv + v dlog S)`.
    pub fn wirtinger(&self, slot: Slot) -> Self {
        let dv = self.value.wirtinger(slot);
        let v = if self.scale.is_trivial() {
            dv
        } else {
            dv.add(&self.value.mul(&self.scale.log_derivative(slot)))
        };
        ScaledField { scale: self.scale.clone(), value: v }
    }

    /// Logarithmic derivative `d(S v) / (S v)`, always rational.
    pub fn log_derivative(&self, slot: Slot) -> Result<WRational> {
        let r = self.value.wirtinger(slot).div(&self.value)?;
        Ok(r.add(&self.scale.log_derivative(slot)))
    }

    pub fn is_identically_zero(&self) -> bool {
        self.value.is_identically_zero()
    }

    pub fn is_holomorphic(&self) -> bool {
        let n = self.nvars();
        (0..n).all(|k| self.wirtinger(Slot::Anti(k)).is_identically_zero())
    }

    pub fn equals(&self, o: &Self) -> bool {
        match self.sub(o) {
            Ok(d) => d.is_identically_zero(),
            Err(_) => {
                // different fractional parts: compare the ratio
                match self.mul(&o.inv().expect("nonzero")).to_rational() {
                    Some(r) => r.equals(&WRational::one(self.nvars())),
                    None => false,
                }
            }
        }
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        Ok(self.value.eval(z)? * self.scale.eval(z)?)
    }
}

/// `true` when `q` is an integer.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}
