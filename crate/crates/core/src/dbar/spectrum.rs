//! Spectra of the graded pieces and the first-eigenvalue scan.

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::basis::binomial;
use super::forms::{check_alpha, FormIndex, MonomialForm};
use super::linalg::null_space;
use super::matrix::{box1_matrix_symbolic, Box1Matrix, GershgorinSummary};
use crate::bergman::gram_entries;
use crate::error::{Error, Result};
use crate::field::{format_rational, rat_to_f64, GaussRat};

/// Relative tolerance for merging eigenvalues into clusters.
pub const CLUSTER_TOL: f64 = 1e-9;

/// Largest piece handed to the dense cross-check.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Sorted clusters of nearly equal values.
pub fn cluster(values: &[f64], tol: f64) -> Vec<Cluster> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((first, k, sum)) if close(*first, x, tol) => {
                *k += 1;
                *sum += x;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter().map(|(_, k, s)| Cluster { value: s / k as f64, multiplicity: k }).collect()
}

/// Eigenvalues of `A` given `G` positive definite with `G A` symmetric.
///
/// With `G = L L^T` the matrix `L^{-1} (G A) L^{-T}` is symmetric and similar to `A`.
pub fn weighted_eigenvalues(a: &[Vec<BigRational>], g: &[Vec<BigRational>]) -> Result<Vec<f64>> {
    let n = a.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut ga = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if g[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !a[k][j].is_zero() {
                    ga[i][j] += &g[i][k] * &a[k][j];
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            if ga[i][j] != ga[j][i] {
                let d = rat_to_f64(&(&ga[i][j] - &ga[j][i]));
                return Err(Error::NotSelfAdjoint { row: i, col: j, gap: d });
            }
        }
    }
    // rescale so the Cholesky factor is well inside the float range
    let scale = g.iter().flatten().map(|x| rat_to_f64(x).abs()).fold(0.0, f64::max);
    let gm = DMatrix::from_fn(n, n, |i, j| rat_to_f64(&g[i][j]) / scale);
    let gam = DMatrix::from_fn(n, n, |i, j| rat_to_f64(&ga[i][j]) / scale);
    let l = gm.cholesky().ok_or_else(|| Error::Singular("Gram matrix is not positive definite".into()))?.l();
    let l_inv = l.try_inverse().ok_or_else(|| Error::Singular("Cholesky factor".into()))?;
    let s = &l_inv * gam * l_inv.transpose();
    let s = (&s + s.transpose()) * 0.5;
    Ok(s.symmetric_eigen().eigenvalues.iter().copied().collect())
}

fn block_dense(b: &Box1Matrix, block: &[usize], alpha: &BigRational) -> Vec<Vec<BigRational>> {
    block.iter().map(|&r| block.iter().map(|&c| b.entry(r, c).eval(alpha)).collect()).collect()
}

fn weight_exponent(alpha: &BigRational) -> BigRational {
    -alpha - BigRational::one()
}

/// All eigenvalues, solved block by block.
pub fn eigenvalues(b: &Box1Matrix, alpha: &BigRational) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    let c = weight_exponent(alpha);
    let mut out = Vec::with_capacity(b.size());
    for block in b.blocks() {
        let g = gram_entries(&b.basis, &block, &c)?;
        out.extend(weighted_eigenvalues(&block_dense(b, &block, alpha), &g)?);
    }
    Ok(out)
}

pub fn spectrum(b: &Box1Matrix, alpha: &BigRational) -> Result<Vec<Cluster>> {
    Ok(cluster(&eigenvalues(b, alpha)?, CLUSTER_TOL))
}

/// Spectrum of the whole piece without the block split.
pub fn spectrum_dense(b: &Box1Matrix, alpha: &BigRational) -> Result<Vec<Cluster>> {
    check_alpha(alpha)?;
    if b.size() > DENSE_LIMIT {
        return Err(Error::TooLarge { what: "dense piece", size: b.size(), limit: DENSE_LIMIT });
    }
    let all: Vec<usize> = (0..b.size()).collect();
    let g = gram_entries(&b.basis, &all, &weight_exponent(alpha))?;
    Ok(cluster(&weighted_eigenvalues(&b.dense(alpha), &g)?, CLUSTER_TOL))
}

/// Spectrum of degree `m` in closed form:
/// `(m+1)(n-alpha-1)` with multiplicity `C(n+m, n-1)` and `(m+1)(n-alpha-2)` on the rest.
pub fn closed_form_spectrum(n: usize, alpha: &BigRational, m: u32) -> Vec<(BigRational, usize)> {
    let big = |k: i64| BigRational::from_integer(k.into());
    let total = super::basis::basis_size(n, m) as usize;
    let top = binomial(n as u64 + m as u64, n as u64 - 1) as usize;
    let mp1 = big(m as i64 + 1);
    let a = &mp1 * (big(n as i64 - 1) - alpha);
    let b = &mp1 * (big(n as i64 - 2) - alpha);
    let mut out = vec![(a, top)];
    if total > top {
        out.push((b, total - top));
    }
    out.sort();
    out
}

/// The predicted first eigenvalue.
pub fn nu_formula(n: usize, alpha: &BigRational) -> Result<BigRational> {
    check_alpha(alpha)?;
    let big = |k: i64| BigRational::from_integer(k.into());
    Ok(match n {
        0 => return Err(Error::InvalidParameter("n must be positive".into())),
        1 => -alpha.clone(),
        2 => (big(1) - alpha).min(big(-2) * alpha),
        _ => big(n as i64 - 1) - alpha,
    })
}

/// The eigenvalue as an exact rational, given that `d * A` has integer entries.
fn rationalize(x: f64, alpha: &BigRational) -> BigRational {
    let d = alpha.denom().to_i64().unwrap_or(1).max(1);
    let k = (x * d as f64).round() as i64;
    BigRational::new(k.into(), d.into())
}

/// Exact eigenvectors for `value`, mapped back to one-forms.
pub fn eigenspace(b: &Box1Matrix, alpha: &BigRational, value: &BigRational) -> Vec<MonomialForm> {
    let n = b.n();
    let mut out = Vec::new();
    for block in b.blocks() {
        let mut d = block_dense(b, &block, alpha);
        for (i, row) in d.iter_mut().enumerate() {
            row[i] -= value;
        }
        for v in null_space(&d) {
            let mut f = MonomialForm::zero(n, 1);
            for (k, c) in v.iter().enumerate() {
                let (lam, l) = b.basis.get(block[k]);
                f.add_term(lam.clone(), FormIndex::One(*l), GaussRat::real(c.clone()));
            }
            out.push(f);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactCluster {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub alpha: String,
    pub m: u32,
    #[serde(rename = "N")]
    pub size: usize,
    /// `[row, col, value]` for the nonzero entries, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<(usize, usize, String)>>,
    pub eigenvalues: Vec<Cluster>,
    pub closed_form: Vec<ExactCluster>,
    pub closed_form_matches: bool,
    pub gershgorin: GershgorinSummary,
    /// Smallest eigenvalue is at least the smallest `delta_gamma`.
    pub gershgorin_containment: bool,
    pub column_sum: String,
    pub column_sums_exact: bool,
    pub multiplicities_sum: bool,
    pub min_eigenvalue: f64,
    pub nu: String,
}

impl SpectralReport {
    /// Structural checks that must hold on every piece.
    pub fn consistent(&self) -> bool {
        self.closed_form_matches && self.gershgorin_containment && self.column_sums_exact && self.multiplicities_sum
    }
}

fn clusters_match(observed: &[Cluster], exact: &[(BigRational, usize)]) -> bool {
    observed.len() == exact.len()
        && observed
            .iter()
            .zip(exact)
            .all(|(o, (v, k))| o.multiplicity == *k && close(o.value, rat_to_f64(v), CLUSTER_TOL))
}

pub fn spectral_report(n: usize, alpha: &BigRational, m: u32, with_matrix: bool) -> Result<SpectralReport> {
    check_alpha(alpha)?;
    let b = box1_matrix_symbolic(n, m)?;
    report_for(&b, alpha, with_matrix)
}

pub fn report_for(b: &Box1Matrix, alpha: &BigRational, with_matrix: bool) -> Result<SpectralReport> {
    let (n, m) = (b.n(), b.m());
    let clusters = spectrum(b, alpha)?;
    let exact = closed_form_spectrum(n, alpha, m);
    let g = b.gershgorin(alpha)?;
    let min_eig = clusters.first().map_or(0.0, |c| c.value);
    let min_delta = rat_to_f64(&g.min_delta);
    let col = b.expected_column_sum(alpha);
    Ok(SpectralReport {
        n,
        alpha: format_rational(alpha),
        m,
        size: b.size(),
        matrix: with_matrix.then(|| b.nonzeros().map(|(r, c, v)| (r, c, format_rational(&v.eval(alpha)))).collect()),
        closed_form_matches: clusters_match(&clusters, &exact),
        multiplicities_sum: clusters.iter().map(|c| c.multiplicity).sum::<usize>() == b.size(),
        eigenvalues: clusters,
        closed_form: exact.iter().map(|(v, k)| ExactCluster { value: format_rational(v), multiplicity: *k }).collect(),
        gershgorin_containment: min_eig >= min_delta - 1e-9 * min_delta.abs().max(1.0),
        gershgorin: GershgorinSummary::from(&g),
        column_sums_exact: b.column_sums(alpha).iter().all(|s| *s == col),
        column_sum: format_rational(&col),
        min_eigenvalue: min_eig,
        nu: format_rational(&nu_formula(n, alpha)?),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub n: usize,
    pub alpha: String,
    pub m_max: u32,
    pub lambda1: f64,
    pub lambda1_exact: String,
    pub nu: String,
    pub multiplicity: usize,
    /// Eigenforms at `lambda1`, printed.
    pub eigenspace: Vec<String>,
    /// `(m, smallest eigenvalue)`.
    pub per_degree_min: Vec<(u32, f64)>,
    /// For `m >= 2` the smallest eigenvalue is at least `-alpha (m+1)`.
    pub tail_bound_holds: bool,
    pub reports: Vec<SpectralReport>,
    pub pass: bool,
}

/// Output of the scan plus the eigenforms themselves.
#[derive(Clone, Debug)]
pub struct Scan {
    pub result: ScanResult,
    pub eigenforms: Vec<MonomialForm>,
}

pub fn first_eigenvalue_scan(n: usize, alpha: &BigRational, m_max: u32) -> Result<Scan> {
    check_alpha(alpha)?;
    if m_max < 2 {
        return Err(Error::InvalidParameter("m_max must be at least 2".into()));
    }
    let nu = nu_formula(n, alpha)?;
    let mut mats = Vec::new();
    let mut reports = Vec::new();
    let mut per_degree_min = Vec::new();
    let mut tail = true;
    let minus_alpha = -rat_to_f64(alpha);
    for m in 0..=m_max {
        let b = box1_matrix_symbolic(n, m)?;
        let r = report_for(&b, alpha, false)?;
        per_degree_min.push((m, r.min_eigenvalue));
        if m >= 2 {
            let floor = minus_alpha * (m as f64 + 1.0);
            tail &= r.min_eigenvalue >= floor * (1.0 - CLUSTER_TOL);
        }
        reports.push(r);
        mats.push(b);
    }
    let lambda1 = per_degree_min.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let exact = rationalize(lambda1, alpha);
    let mut forms = Vec::new();
    for (b, r) in mats.iter().zip(&reports) {
        if r.eigenvalues.iter().any(|c| close(c.value, lambda1, CLUSTER_TOL)) {
            forms.extend(eigenspace(b, alpha, &exact));
        }
    }
    let multiplicity: usize = reports
        .iter()
        .flat_map(|r| r.eigenvalues.iter())
        .filter(|c| close(c.value, lambda1, CLUSTER_TOL))
        .map(|c| c.multiplicity)
        .sum();
    let nu_f = rat_to_f64(&nu);
    let pass = close(lambda1, nu_f, CLUSTER_TOL)
        && exact == nu
        && forms.len() == multiplicity
        && tail
        && reports.iter().all(|r| r.consistent());
    Ok(Scan {
        result: ScanResult {
            n,
            alpha: format_rational(alpha),
            m_max,
            lambda1,
            lambda1_exact: format_rational(&exact),
            nu: format_rational(&nu),
            multiplicity,
            eigenspace: forms.iter().map(|f| f.to_string()).collect(),
            per_degree_min,
            tail_bound_holds: tail,
            reports,
            pass,
        },
        eigenforms: forms,
    })
}

/// Whether `x` is within the scan tolerance of `y`.
pub fn approx_eq(x: f64, y: f64) -> bool {
    close(x, y, CLUSTER_TOL)
}
