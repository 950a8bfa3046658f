//! Polynomials in `z_1..z_n, zbar_1..zbar_n` with Gaussian-rational coefficients.
//!
//! Exponent vectors have length `2n`; slots `0..n` hold powers of `z`, slots
//! `n..2n` powers of `zbar`. Terms are kept in a `BTreeMap`, so the largest key
//! is the leading term for the lexicographic order.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::gauss::GaussRat;
use crate::error::{Error, Result};

pub type Exponent = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WPoly {
    n: usize,
    terms: BTreeMap<Exponent, GaussRat>,
}

/// Which family of Wirtinger variables a derivative acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Holo(usize),
    Anti(usize),
}

impl Slot {
    pub fn index(self, n: usize) -> usize {
        match self {
            Slot::Holo(k) => k,
            Slot::Anti(k) => n + k,
        }
    }
}

impl WPoly {
    pub fn zero(n: usize) -> Self {
        WPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: GaussRat) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; 2 * n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussRat::one())
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        Self::constant(n, GaussRat::from_int(k))
    }

    pub fn monomial(n: usize, exp: Exponent, c: GaussRat) -> Self {
        assert_eq!(exp.len(), 2 * n);
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `z_k` (0-based).
    pub fn z(n: usize, k: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[k] = 1;
        Self::monomial(n, e, GaussRat::one())
    }

    /// `zbar_k` (0-based).
    pub fn zbar(n: usize, k: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + k] = 1;
        Self::monomial(n, e, GaussRat::one())
    }

    /// `r_k = |z_k|^2`.
    pub fn r_k(n: usize, k: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[k] = 1;
        e[n + k] = 1;
        Self::monomial(n, e, GaussRat::one())
    }

    /// `|z|^2 = sum_k |z_k|^2`.
    pub fn r(n: usize) -> Self {
        let mut p = Self::zero(n);
        for k in 0..n {
            p = p.add(&Self::r_k(n, k));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, GaussRat> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> GaussRat {
        self.terms.get(&vec![0; 2 * self.n]).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Exponent, &GaussRat)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, e: Exponent, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &WPoly) -> WPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> WPoly {
        WPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> WPoly {
        if c.is_zero() {
            return WPoly::zero(self.n);
        }
        WPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &WPoly) -> WPoly {
        let mut out = WPoly::zero(self.n);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> WPoly {
        let mut acc = WPoly::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Swap `z` and `zbar` exponents and conjugate every coefficient.
    pub fn conj(&self) -> WPoly {
        let n = self.n;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; 2 * n];
                f[..n].copy_from_slice(&e[n..]);
                f[n..].copy_from_slice(&e[..n]);
                (f, c.conj())
            })
            .collect();
        WPoly { n, terms }
    }

    pub fn derivative(&self, slot: Slot) -> WPoly {
        let i = slot.index(self.n);
        let mut out = WPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.insert_add(f, c.scale(&super::gauss::rat_int(e[i] as i64)));
        }
        out
    }

    /// True when no term contains a `zbar`.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|e| e[self.n..].iter().all(|&x| x == 0))
    }

    /// Divide by the single variable in `slot`; `None` unless every term contains it.
    pub fn div_by_var(&self, slot: Slot) -> Option<WPoly> {
        let i = slot.index(self.n);
        let mut out = WPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return None;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.terms.insert(f, c.clone());
        }
        Some(out)
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &WPoly) -> Option<WPoly> {
        let (ld, lc) = d.leading()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = WPoly::zero(self.n);
        while let Some((lr, cr)) = rem.leading() {
            if lr.iter().zip(ld).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponent = lr.iter().zip(ld).map(|(a, b)| a - b).collect();
            let c = cr * &lc_inv;
            let t = WPoly::monomial(self.n, e.clone(), c.clone());
            rem = rem.sub(&t.mul(d));
            q.insert_add(e, c);
        }
        Some(q)
    }

    /// Split into `(leading coefficient, monic polynomial)`.
    pub fn monic(&self) -> (GaussRat, WPoly) {
        match self.leading() {
            None => (GaussRat::zero(), self.clone()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = lc.inv().expect("nonzero leading coefficient");
                (lc, self.scale(&inv))
            }
        }
    }

    /// Evaluate with `zbar` slots bound to the conjugates of `z`.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.eval_with_scale(z).0
    }

    /// Value together with the sum of absolute term values (for cancellation checks).
    pub fn eval_with_scale(&self, z: &[Complex64]) -> (Complex64, f64) {
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_complex();
            for k in 0..n {
                if e[k] > 0 {
                    t *= z[k].powu(e[k] as u32);
                }
                if e[n + k] > 0 {
                    t *= z[k].conj().powu(e[n + k] as u32);
                }
            }
            mag += t.norm();
            acc += t;
        }
        (acc, mag)
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn eval_exact(&self, z: &[GaussRat]) -> GaussRat {
        let n = self.n;
        let zc: Vec<GaussRat> = z.iter().map(|x| x.conj()).collect();
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..n {
                if e[k] > 0 {
                    t = &t * &z[k].pow(e[k] as u32);
                }
                if e[n + k] > 0 {
                    t = &t * &zc[k].pow(e[n + k] as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Embed into `m >= n` variables.
    pub fn lift(&self, m: usize) -> Result<WPoly> {
        if m < self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: m });
        }
        let n = self.n;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; 2 * m];
                f[..n].copy_from_slice(&e[..n]);
                f[m..m + n].copy_from_slice(&e[n..]);
                (f, c.clone())
            })
            .collect();
        Ok(WPoly { n: m, terms })
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.n;
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut vars = Vec::new();
            for k in 0..n {
                for (slot, name) in [(k, "z"), (n + k, "zbar")] {
                    match e[slot] {
                        0 => {}
                        1 => vars.push(format!("{name}{}", k + 1)),
                        p => vars.push(format!("{name}{}^{p}", k + 1)),
                    }
                }
            }
            if vars.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division_recovers_factor() {
        let n = 2;
        let a = WPoly::one(n).sub(&WPoly::r(n));
        let b = WPoly::z(n, 0).add(&WPoly::zbar(n, 1).scale(&GaussRat::i()));
        let p = a.mul(&b).mul(&a);
        assert_eq!(p.exact_div(&a).unwrap(), a.mul(&b));
        assert!(b.exact_div(&a).is_none());
    }

    #[test]
    fn conj_is_involution_and_swaps_slots() {
        let p = WPoly::z(2, 0).scale(&GaussRat::i()).add(&WPoly::r_k(2, 1));
        assert_eq!(p.conj().conj(), p);
        assert_eq!(p.conj(), WPoly::zbar(2, 0).scale(&-GaussRat::i()).add(&WPoly::r_k(2, 1)));
    }

    #[test]
    fn eval_binds_conjugates() {
        let p = WPoly::r(2);
        let z = [Complex64::new(0.3, 0.4), Complex64::new(0.0, 0.5)];
        assert!((p.eval(&z) - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }
}
