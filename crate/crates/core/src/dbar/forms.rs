//! Holomorphic `(p,0)`-forms with polynomial coefficients, `p <= 2`.
//!
//! Two-forms are stored through `v_{rs}` with `r < s`; `v_{sr} = -v_{rs}`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::basis::MultiIndex;
use crate::error::{Error, Result};
use crate::field::{parse_rational, GaussRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormIndex {
    Scalar,
    One(usize),
    Two(usize, usize),
}

impl FormIndex {
    fn degree(&self) -> u8 {
        match self {
            FormIndex::Scalar => 0,
            FormIndex::One(_) => 1,
            FormIndex::Two(..) => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonomialForm {
    n: usize,
    degree: u8,
    terms: BTreeMap<(MultiIndex, FormIndex), GaussRat>,
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

impl MonomialForm {
    pub fn zero(n: usize, degree: u8) -> Self {
        MonomialForm { n, degree, terms: BTreeMap::new() }
    }

    /// `c z^Lambda`.
    pub fn function(lam: MultiIndex, c: GaussRat) -> Self {
        let mut f = Self::zero(lam.dim(), 0);
        f.add_term(lam, FormIndex::Scalar, c);
        f
    }

    /// `c z^Lambda dz_l`.
    pub fn one_form(lam: MultiIndex, l: usize, c: GaussRat) -> Self {
        let mut f = Self::zero(lam.dim(), 1);
        f.add_term(lam, FormIndex::One(l), c);
        f
    }

    /// `c z^Lambda dz_r ^ dz_s`.
    pub fn two_form(lam: MultiIndex, r: usize, s: usize, c: GaussRat) -> Self {
        let mut f = Self::zero(lam.dim(), 2);
        f.add_two(lam, r, s, c);
        f
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &FormIndex, &GaussRat)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lam: &MultiIndex, idx: FormIndex) -> GaussRat {
        self.terms.get(&(lam.clone(), idx)).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Adds `c` to a stored coefficient; zero results are dropped.
    pub fn add_term(&mut self, lam: MultiIndex, idx: FormIndex, c: GaussRat) {
        assert_eq!(idx.degree(), self.degree, "form index of the wrong degree");
        assert_eq!(lam.dim(), self.n, "multi-index of the wrong length");
        if c.is_zero() {
            return;
        }
        let key = (lam, idx);
        let v = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    /// Adds `c dz_r ^ dz_s` in the `r < s` normal form.
    pub fn add_two(&mut self, lam: MultiIndex, r: usize, s: usize, c: GaussRat) {
        match r.cmp(&s) {
            std::cmp::Ordering::Less => self.add_term(lam, FormIndex::Two(r, s), c),
            std::cmp::Ordering::Greater => self.add_term(lam, FormIndex::Two(s, r), -c),
            std::cmp::Ordering::Equal => {}
        }
    }

    /// `v_{rs}` with the antisymmetric extension.
    pub fn two_coefficient(&self, lam: &MultiIndex, r: usize, s: usize) -> GaussRat {
        match r.cmp(&s) {
            std::cmp::Ordering::Less => self.coefficient(lam, FormIndex::Two(r, s)),
            std::cmp::Ordering::Greater => -self.coefficient(lam, FormIndex::Two(s, r)),
            std::cmp::Ordering::Equal => GaussRat::zero(),
        }
    }

    fn same_shape(&self, o: &Self) {
        assert!(self.n == o.n && self.degree == o.degree, "forms of different shape");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_shape(o);
        let mut out = self.clone();
        for ((lam, idx), c) in &o.terms {
            out.add_term(lam.clone(), *idx, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::from_int(-1))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for ((lam, idx), v) in &self.terms {
            out.add_term(lam.clone(), *idx, v * c);
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&GaussRat::real(q.clone()))
    }

    /// Coefficients of `dz_l` as a function.
    pub fn component(&self, l: usize) -> MonomialForm {
        let mut out = Self::zero(self.n, 0);
        for ((lam, idx), c) in &self.terms {
            if *idx == FormIndex::One(l) {
                out.add_term(lam.clone(), FormIndex::Scalar, c.clone());
            }
        }
        out
    }

    /// Terms whose monomial has total degree `m`.
    pub fn homogeneous_part(&self, m: u32) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for ((lam, idx), c) in &self.terms {
            if lam.total() == m {
                out.add_term(lam.clone(), *idx, c.clone());
            }
        }
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(lam, _)| lam.total()).max()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(lam, _)| lam.total()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `d/dz_j` of every coefficient.
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for ((lam, idx), c) in &self.terms {
            if let Some(lower) = lam.sub_unit(j) {
                out.add_term(lower, *idx, c.scale(&int(lam.get(j) as i64)));
            }
        }
        out
    }

    /// Multiplies every coefficient by `z_j`.
    pub fn times_z(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for ((lam, idx), c) in &self.terms {
            out.add_term(lam.add_unit(j), *idx, c.clone());
        }
        out
    }

    /// Reinterprets a function as the coefficient of `dz_l`.
    fn as_one_form(&self, l: usize) -> Self {
        assert_eq!(self.degree, 0);
        let mut out = Self::zero(self.n, 1);
        for ((lam, _), c) in &self.terms {
            out.add_term(lam.clone(), FormIndex::One(l), c.clone());
        }
        out
    }

    /// Holomorphic exterior derivative; on one-forms `v_{jk} = d_j u_k - d_k u_j`.
    pub fn dbar(&self) -> Result<Self> {
        let n = self.n;
        match self.degree {
            0 => {
                let mut out = Self::zero(n, 1);
                for j in 0..n {
                    out = out.add(&self.partial(j).as_one_form(j));
                }
                Ok(out)
            }
            1 => {
                let mut out = Self::zero(n, 2);
                for ((lam, idx), c) in &self.terms {
                    let FormIndex::One(k) = *idx else { unreachable!() };
                    for j in 0..n {
                        if j == k {
                            continue;
                        }
                        if let Some(lower) = lam.sub_unit(j) {
                            // d_j (c z^lam) dz_j ^ dz_k
                            out.add_two(lower, j, k, c.scale(&int(lam.get(j) as i64)));
                        }
                    }
                }
                Ok(out)
            }
            _ => Err(Error::InvalidParameter("d of a two-form is not implemented".into())),
        }
    }

    /// Evaluates the coefficients at a point.
    pub fn eval_coefficients(&self, z: &[num_complex::Complex64]) -> BTreeMap<FormIndex, num_complex::Complex64> {
        let mut out = BTreeMap::new();
        for ((lam, idx), c) in &self.terms {
            let mut v = c.to_complex();
            for (j, &e) in lam.0.iter().enumerate() {
                v *= z[j].powu(e);
            }
            *out.entry(*idx).or_insert(num_complex::Complex64::new(0.0, 0.0)) += v;
        }
        out
    }

    /// Parses sums like `2*z1^2*dz1 - (1/2+i)*z2*dz2`, `3*z1*z2` or `dz1^dz2`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("form `{s}`: {m}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() || text == "0" {
            return Ok(Self::zero(n, 1));
        }
        // split on top-level + and -
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if i == 0 {
                    neg = ch == '-';
                    continue;
                }
                pieces.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        pieces.push((neg, cur));
        let mut out: Option<Self> = None;
        for (neg, piece) in pieces {
            if piece.is_empty() {
                return Err(bad("empty term"));
            }
            let mut c = GaussRat::one();
            let mut lam = MultiIndex::zero(n);
            let mut dz: Vec<usize> = Vec::new();
            for factor in split_factors(&piece) {
                let factor = factor.as_str();
                if let Some(rest) = factor.strip_prefix("dz") {
                    let l: usize = rest.parse().map_err(|_| bad("bad dz index"))?;
                    if l == 0 || l > n {
                        return Err(bad("dz index out of range"));
                    }
                    dz.push(l - 1);
                } else if let Some(rest) = factor.strip_prefix('z') {
                    let (j, e) = match rest.split_once('^') {
                        Some((j, e)) => (j, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let j: usize = j.parse().map_err(|_| bad("bad variable"))?;
                    if j == 0 || j > n {
                        return Err(bad("variable out of range"));
                    }
                    lam.0[j - 1] += e;
                } else {
                    let inner = factor.trim_start_matches('(').trim_end_matches(')');
                    let v = if inner.contains('i') { GaussRat::parse(inner)? } else { GaussRat::real(parse_rational(inner)?) };
                    c = &c * &v;
                }
            }
            if neg {
                c = -c;
            }
            let (deg, idx) = match dz.as_slice() {
                [] => (0, FormIndex::Scalar),
                [l] => (1, FormIndex::One(*l)),
                [r, s] => (2, FormIndex::Two(*r, *s)),
                _ => return Err(bad("too many differentials")),
            };
            let form = out.get_or_insert_with(|| Self::zero(n, deg));
            if form.degree != deg {
                return Err(bad("mixed degrees"));
            }
            match idx {
                FormIndex::Two(r, s) => form.add_two(lam, r, s, c),
                _ => form.add_term(lam, idx, c),
            }
        }
        Ok(out.unwrap_or_else(|| Self::zero(n, 1)))
    }
}

/// Splits a product on `*` and `^` between differentials, keeping `z1^2` together.
fn split_factors(term: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let chars: Vec<char> = term.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let wedge = ch == '^' && cur.starts_with("dz");
        if depth == 0 && (ch == '*' || wedge) {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
        i += 1;
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Prints in the syntax accepted by [`MonomialForm::parse`], e.g. `2*z1^2*dz1 - (1+i)*z2*dz2`.
impl fmt::Display for MonomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((lam, idx), c)) in self.terms.iter().enumerate() {
            let negative = c.im.is_zero() && c.re.is_negative();
            let c = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in lam.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("z{}", j + 1)),
                    _ => factors.push(format!("z{}^{}", j + 1, e)),
                }
            }
            match idx {
                FormIndex::Scalar => {}
                FormIndex::One(l) => factors.push(format!("dz{}", l + 1)),
                FormIndex::Two(r, s) => factors.push(format!("dz{}^dz{}", r + 1, s + 1)),
            }
            if !c.is_one() || factors.is_empty() {
                let text = if c.im.is_zero() { c.to_string() } else { format!("({c})") };
                factors.insert(0, text);
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// The weight exponent must be negative for the Bergman space to be nontrivial.
pub fn check_alpha(alpha: &BigRational) -> Result<()> {
    if !alpha.is_negative() {
        return Err(Error::InvalidParameter(format!("alpha must be negative, got {alpha}")));
    }
    Ok(())
}

fn n_minus(n: usize, alpha: &BigRational, k: i64) -> BigRational {
    int(n as i64 - k) - alpha
}

/// `d* u = (n-1-alpha) sum_j z_j u_j` for the half hyperbolic metric.
pub fn dbar_star_1(u: &MonomialForm, alpha: &BigRational) -> Result<MonomialForm> {
    check_alpha(alpha)?;
    if u.degree != 1 {
        return Err(Error::InvalidParameter("expected a one-form".into()));
    }
    let n = u.n;
    let mut out = MonomialForm::zero(n, 0);
    for j in 0..n {
        out = out.add(&u.component(j).times_z(j));
    }
    Ok(out.scale_rational(&n_minus(n, alpha, 1)))
}

/// `d* v = -(n-alpha-2) sum_r sum_s z_s v_{rs} dz_r`.
pub fn dbar_star_2(v: &MonomialForm, alpha: &BigRational) -> Result<MonomialForm> {
    check_alpha(alpha)?;
    if v.degree != 2 {
        return Err(Error::InvalidParameter("expected a two-form".into()));
    }
    let n = v.n;
    let mut out = MonomialForm::zero(n, 1);
    for ((lam, idx), c) in &v.terms {
        let FormIndex::Two(r, s) = *idx else { unreachable!() };
        // v_{rs} z_s dz_r and v_{sr} z_r dz_s
        out.add_term(lam.add_unit(s), FormIndex::One(r), c.clone());
        out.add_term(lam.add_unit(r), FormIndex::One(s), -c.clone());
    }
    Ok(out.scale_rational(&-n_minus(n, alpha, 2)))
}

/// `(n-alpha-1) u + sum_k sum_j ((n-alpha-2) d_j u_k + d_k u_j) z_j dz_k`.
pub fn box1_apply(u: &MonomialForm, alpha: &BigRational) -> Result<MonomialForm> {
    check_alpha(alpha)?;
    if u.degree != 1 {
        return Err(Error::InvalidParameter("expected a one-form".into()));
    }
    let n = u.n;
    let a1 = n_minus(n, alpha, 1);
    let a2 = n_minus(n, alpha, 2);
    let comps: Vec<MonomialForm> = (0..n).map(|l| u.component(l)).collect();
    let mut out = u.scale_rational(&a1);
    for k in 0..n {
        let mut coef = MonomialForm::zero(n, 0);
        for j in 0..n {
            let t = comps[k].partial(j).scale_rational(&a2).add(&comps[j].partial(k));
            coef = coef.add(&t.times_z(j));
        }
        out = out.add(&coef.as_one_form(k));
    }
    Ok(out)
}

/// `d* d u + d d* u`.
pub fn box1_composed(u: &MonomialForm, alpha: &BigRational) -> Result<MonomialForm> {
    let a = dbar_star_2(&u.dbar()?, alpha)?;
    let b = dbar_star_1(u, alpha)?.dbar()?;
    Ok(a.add(&b))
}

/// `box(z^Lambda dz_l)` from the monomial formula, as `(Lambda', l', coefficient)`.
pub fn box1_monomial(lam: &MultiIndex, l: usize, alpha: &BigRational) -> Vec<(MultiIndex, usize, BigRational)> {
    let n = lam.dim();
    let m = lam.total() as i64;
    let diag = int(m + 1) * n_minus(n, alpha, 1) - int(m) + int(lam.get(l) as i64);
    let mut out = vec![(lam.clone(), l, diag)];
    for j in 0..n {
        if j != l && lam.get(j) > 0 {
            let target = lam.shift(j, l).expect("lambda_j > 0");
            out.push((target, j, int(lam.get(j) as i64)));
        }
    }
    out
}

/// `(u_1 + z_1 d_1 u_1) dz_1 + z_1 d_1 u_2 dz_2` on the two-dimensional example.
pub fn c2_box_apply(u: &MonomialForm) -> Result<MonomialForm> {
    if u.n != 2 || u.degree != 1 {
        return Err(Error::InvalidParameter("expected a one-form on C^2".into()));
    }
    let u1 = u.component(0);
    let u2 = u.component(1);
    let first = u1.add(&u1.partial(0).times_z(0)).as_one_form(0);
    let second = u2.partial(0).times_z(0).as_one_form(1);
    Ok(first.add(&second))
}
