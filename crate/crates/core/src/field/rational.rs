//! Rational functions `num / den` in the Wirtinger variables.
//!
//! The denominator is stored as a product of monic factors with multiplicities.
//! Sums use the factorwise least common multiple, so no polynomial GCD is ever
//! computed; equality is decided by cross-multiplication (the numerator of the
//! difference). `simplify` cancels known factors by exact trial division.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gauss::{rat, rat_int, GaussRat};
use super::poly::{Slot, WPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct WRational {
    num: WPoly,
    den: Vec<(WPoly, u32)>,
}

/// How `is_identically_zero` decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    /// Expanded-numerator test below `EXACT_TERM_LIMIT` terms, randomized above.
    Auto,
    Exact,
    Randomized { seed: u64, trials: usize },
}

pub const EXACT_TERM_LIMIT: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TRIALS: usize = 5;

fn merge_factor(list: &mut Vec<(WPoly, u32)>, f: WPoly, e: u32) {
    if e == 0 {
        return;
    }
    for (g, k) in list.iter_mut() {
        if *g == f {
            *k += e;
            return;
        }
    }
    list.push((f, e));
}

fn exponent_of(list: &[(WPoly, u32)], f: &WPoly) -> u32 {
    list.iter().find(|(g, _)| g == f).map(|(_, e)| *e).unwrap_or(0)
}

impl WRational {
    pub fn from_poly(p: WPoly) -> Self {
        WRational { num: p, den: Vec::new() }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_poly(WPoly::zero(n))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(WPoly::one(n))
    }

    pub fn constant(n: usize, c: GaussRat) -> Self {
        Self::from_poly(WPoly::constant(n, c))
    }

    pub fn from_int(n: usize, k: i64) -> Self {
        Self::from_poly(WPoly::from_int(n, k))
    }

    pub fn from_ratio(n: usize, p: i64, q: i64) -> Self {
        Self::constant(n, GaussRat::real(rat(p, q)))
    }

    pub fn z(n: usize, k: usize) -> Self {
        Self::from_poly(WPoly::z(n, k))
    }

    pub fn zbar(n: usize, k: usize) -> Self {
        Self::from_poly(WPoly::zbar(n, k))
    }

    pub fn r(n: usize) -> Self {
        Self::from_poly(WPoly::r(n))
    }

    pub fn r_k(n: usize, k: usize) -> Self {
        Self::from_poly(WPoly::r_k(n, k))
    }

    /// Build `num / den` from two polynomials.
    pub fn new(num: WPoly, den: WPoly) -> Result<Self> {
        Self::from_poly(num).div(&Self::from_poly(den))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &WPoly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(WPoly, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn den(&self) -> WPoly {
        let mut d = WPoly::one(self.nvars());
        for (f, e) in &self.den {
            d = d.mul(&f.pow(*e));
        }
        d
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.num.term_count()
    }

    pub fn neg(&self) -> Self {
        WRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        WRational { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&GaussRat::from_int(k))
    }

    fn lcm_parts(&self, o: &Self) -> (Vec<(WPoly, u32)>, WPoly, WPoly) {
        let n = self.nvars();
        let mut lcm = self.den.clone();
        for (f, e) in &o.den {
            let have = exponent_of(&lcm, f);
            if *e > have {
                merge_factor(&mut lcm, f.clone(), e - have);
            }
        }
        let mut ma = WPoly::one(n);
        let mut mb = WPoly::one(n);
        for (f, e) in &lcm {
            let ea = exponent_of(&self.den, f);
            let eb = exponent_of(&o.den, f);
            if e > &ea {
                ma = ma.mul(&f.pow(e - ea));
            }
            if e > &eb {
                mb = mb.mul(&f.pow(e - eb));
            }
        }
        (lcm, ma, mb)
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        let (den, ma, mb) = self.lcm_parts(o);
        let num = self.num.mul(&ma).add(&o.num.mul(&mb));
        WRational { num, den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.nvars();
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero(n);
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            merge_factor(&mut den, f.clone(), *e);
        }
        WRational { num: self.num.mul(&o.num), den }
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        let num = base.num.pow(k);
        let den = base.den.iter().map(|(f, e)| (f.clone(), e * k)).collect();
        Ok(WRational { num, den })
    }

    /// Split `p` into `c * prod(known_i^e_i) * rest` with `rest` monic.
    fn split_against(p: &WPoly, known: &[WPoly]) -> (GaussRat, Vec<(WPoly, u32)>, WPoly) {
        let mut rest = p.clone();
        let mut found = Vec::new();
        for f in known {
            if f.is_constant() {
                continue;
            }
            let mut e = 0;
            while let Some(q) = rest.exact_div(f) {
                rest = q;
                e += 1;
            }
            merge_factor(&mut found, f.clone(), e);
        }
        let (c, m) = rest.monic();
        (c, found, m)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(self.nvars()).div(self)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.nvars();
        let mut known: Vec<WPoly> = self.den.iter().map(|(f, _)| f.clone()).collect();
        for (f, _) in &o.den {
            if !known.contains(f) {
                known.push(f.clone());
            }
        }
        let (c, mut found, rest) = Self::split_against(&o.num, &known);
        if !rest.is_constant() {
            merge_factor(&mut found, rest, 1);
        }
        // numerator multiplier is o.den; cancel against the factors pulled out of o.num
        let mut mult = WPoly::one(n);
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            let fe = exponent_of(&found, f);
            let cancel = fe.min(*e);
            if e > &cancel {
                mult = mult.mul(&f.pow(e - cancel));
            }
            if let Some(slot) = found.iter_mut().find(|(g, _)| g == f) {
                slot.1 -= cancel;
            }
        }
        for (f, e) in found {
            merge_factor(&mut den, f, e);
        }
        let num = self.num.mul(&mult).scale(&c.inv()?);
        let mut out = WRational { num, den };
        out.simplify();
        Ok(out)
    }

    /// Cancel denominator factors that divide the numerator exactly.
    pub fn simplify(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    pub fn simplified(mut self) -> Self {
        self.simplify();
        self
    }

    pub fn conj(&self) -> Self {
        let mut num = self.num.conj();
        let mut den = Vec::new();
        for (f, e) in &self.den {
            let (c, m) = f.conj().monic();
            // conj(f)^e = c^e m^e, so divide the numerator by c^e
            num = num.scale(&c.pow(*e).inv().expect("nonzero leading coefficient"));
            merge_factor(&mut den, m, *e);
        }
        WRational { num, den }
    }

    /// Wirtinger derivative `d/dz_k` or `d/dzbar_k` by the quotient rule.
    pub fn wirtinger(&self, slot: Slot) -> Self {
        let n = self.nvars();
        let dn = self.num.derivative(slot);
        let moving: Vec<(usize, WPoly)> = self
            .den
            .iter()
            .enumerate()
            .map(|(i, (f, _))| (i, f.derivative(slot)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        if moving.is_empty() {
            return WRational { num: dn, den: self.den.clone() };
        }
        let mut prod_s = WPoly::one(n);
        for (i, _) in &moving {
            prod_s = prod_s.mul(&self.den[*i].0);
        }
        let mut num = dn.mul(&prod_s);
        for (i, df) in &moving {
            let e = self.den[*i].1;
            let mut t = df.scale(&GaussRat::real(rat_int(e as i64)));
            for (j, _) in &moving {
                if j != i {
                    t = t.mul(&self.den[*j].0);
                }
            }
            num = num.sub(&self.num.mul(&t));
        }
        let mut den = self.den.clone();
        for (i, _) in &moving {
            den[*i].1 += 1;
        }
        WRational { num, den }
    }

    pub fn d(&self, k: usize) -> Self {
        self.wirtinger(Slot::Holo(k))
    }

    pub fn dbar(&self, k: usize) -> Self {
        self.wirtinger(Slot::Anti(k))
    }

    /// Every `d/dzbar_k` vanishes identically.
    pub fn is_holomorphic(&self) -> bool {
        if self.num.is_holomorphic() && self.den.iter().all(|(f, _)| f.is_holomorphic()) {
            return true;
        }
        (0..self.nvars()).all(|k| self.dbar(k).is_identically_zero())
    }

    pub fn is_identically_zero(&self) -> bool {
        self.is_identically_zero_with(ZeroTest::Auto).expect("default trials are valid")
    }

    pub fn is_identically_zero_with(&self, mode: ZeroTest) -> Result<bool> {
        match mode {
            ZeroTest::Exact => Ok(self.num.is_zero()),
            ZeroTest::Auto => {
                if self.num.term_count() <= EXACT_TERM_LIMIT {
                    Ok(self.num.is_zero())
                } else {
                    self.randomized_zero(DEFAULT_SEED, DEFAULT_TRIALS)
                }
            }
            ZeroTest::Randomized { seed, trials } => self.randomized_zero(seed, trials),
        }
    }

    /// Exact evaluation of the numerator at random Gaussian-rational points in
    /// the ball of radius 1/2, skipping points where a denominator factor vanishes.
    fn randomized_zero(&self, seed: u64, trials: usize) -> Result<bool> {
        if trials < 3 {
            return Err(Error::TooFewTrials(trials));
        }
        let n = self.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m: i64 = 10_000;
        let q = 3 * (n as i64).max(1) * m;
        for _ in 0..trials {
            let mut point = None;
            for _ in 0..64 {
                let z: Vec<GaussRat> = (0..n)
                    .map(|_| {
                        GaussRat::new(rat(rng.gen_range(-m..=m), q), rat(rng.gen_range(-m..=m), q))
                    })
                    .collect();
                let r: num_rational::BigRational = z.iter().map(|x| x.norm_sqr()).sum();
                if r < rat(1, 1_000_000) {
                    continue;
                }
                if self.den.iter().all(|(f, _)| !f.eval_exact(&z).is_zero()) {
                    point = Some(z);
                    break;
                }
            }
            let z = point.ok_or(Error::SamplingFailed)?;
            if !self.num.eval_exact(&z).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &Self) -> bool {
        self.sub(o).is_identically_zero()
    }

    /// Floating evaluation with `zbar_k = conj(z_k)`.
    pub fn eval(&self, z: &[Complex64]) -> Result<Complex64> {
        if z.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: z.len() });
        }
        let mut d = Complex64::new(1.0, 0.0);
        for (f, e) in &self.den {
            let (v, mag) = f.eval_with_scale(z);
            if !(v.norm() > 1e-14 * mag.max(f64::MIN_POSITIVE)) {
                return Err(Error::Pole);
            }
            d *= v.powu(*e);
        }
        let out = self.num.eval(z) / d;
        if !out.re.is_finite() || !out.im.is_finite() {
            return Err(Error::Pole);
        }
        Ok(out)
    }

    pub fn eval_exact(&self, z: &[GaussRat]) -> Result<GaussRat> {
        if z.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), got: z.len() });
        }
        let mut d = GaussRat::one();
        for (f, e) in &self.den {
            let v = f.eval_exact(z);
            if v.is_zero() {
                return Err(Error::Pole);
            }
            d = &d * &v.pow(*e);
        }
        Ok(&self.num.eval_exact(z) / &d)
    }

    /// Divide by `z_k` or `zbar_k`; `None` unless the numerator is divisible.
    pub fn div_by_var(&self, slot: Slot) -> Option<Self> {
        let num = self.num.div_by_var(slot)?;
        Some(WRational { num, den: self.den.clone() })
    }

    /// Derivative in `r_k = |z_k|^2` for a function of `r_1..r_n` only.
    pub fn radial_derivative(&self, k: usize) -> Result<Self> {
        self.d(k).div_by_var(Slot::Anti(k)).ok_or(Error::NotMultiRadial(k))
    }

    /// Embed into `m >= n` variables.
    pub fn lift(&self, m: usize) -> Result<Self> {
        let num = self.num.lift(m)?;
        let den = self.den.iter().map(|(f, e)| Ok((f.lift(m)?, *e))).collect::<Result<_>>()?;
        Ok(WRational { num, den })
    }
}

impl fmt::Display for WRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (g, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "({g})")?;
            } else {
                write!(f, "({g})^{e}")?;
            }
        }
        write!(f, ")")
    }
}

/// Sum of a sequence of rational functions.
pub fn sum<'a, I: IntoIterator<Item = &'a WRational>>(n: usize, it: I) -> WRational {
    it.into_iter().fold(WRational::zero(n), |acc, x| acc.add(x))
}
