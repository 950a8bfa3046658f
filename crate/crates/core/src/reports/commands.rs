//! One function per subcommand, each returning a [`Report`].

use std::fs;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::{parse_exact, Command, RunConfig};
use super::render::{verdict, Report, Table};
use crate::bergman::{adjointness_sweep, c2_membership, c2_norm, estimate_check, weighted_symmetry_check, C2Norm};
use crate::catalog::{all_fixtures, make_family, run_fixtures, sample_specs, theorem_fixture, FamilySpec, Fixture, FAMILIES};
use crate::dbar::{box1_matrix_symbolic, c2_spectrum, canonical_solution, first_eigenvalue_scan, MonomialForm};
use crate::error::{Error, Result};
use crate::field::{format_rational, GaussRat};
use crate::geometry::ChernConnection;

pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    match config.command {
        Command::TorsionReport => torsion_report(config),
        Command::WeightScan => weight_scan(config),
        Command::Spectrum => spectrum(config),
        Command::C2 => c2(config),
        Command::SolveDbar => solve_dbar(config),
        Command::AllFixtures => all(config),
    }
}

fn read_spec(config: &RunConfig) -> Result<Option<String>> {
    config.spec.as_ref().map(|p| fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))).transpose()
}

fn family_specs(config: &RunConfig) -> Result<Vec<FamilySpec>> {
    if let Some(text) = read_spec(config)? {
        let v: Value = serde_json::from_str(&text)?;
        return Ok(match v {
            Value::Array(_) => serde_json::from_value(v)?,
            _ => vec![serde_json::from_value(v)?],
        });
    }
    let Some(family) = &config.family else { return Ok(sample_specs()) };
    if !FAMILIES.contains(&family.as_str()) {
        return Err(Error::UnknownFamily(family.clone()));
    }
    let mut out = Vec::new();
    for &n in &config.n {
        if config.beta.is_empty() {
            out.push(FamilySpec::new(family, n));
        }
        for b in &config.beta {
            let beta = parse_exact(b)?;
            out.push(FamilySpec::new(family, n).with("beta", json!(format_rational(&beta))));
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct TorsionEntry {
    family: String,
    n: usize,
    params: Value,
    /// Nonzero `T^i_{jk}` with `j < k`, indices from 1.
    torsion: Vec<(usize, usize, usize, String)>,
    tau: Vec<String>,
    kahler: bool,
    holomorphic_torsion: bool,
    antisymmetric: bool,
    tripod_agrees: Option<bool>,
    conformal_law: Option<bool>,
    dilation_invariant: Option<bool>,
    checks_pass: bool,
}

fn dilation_points(n: usize) -> Vec<Vec<GaussRat>> {
    let pts = [(1, 2, 0), (1, 3, 1), (-2, 5, -1)];
    (0..3)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (p, q, im) = pts[(i + j) % 3];
                    GaussRat::new(BigRational::new(p.into(), q.into()), BigRational::from_integer(im.into()))
                })
                .collect()
        })
        .collect()
}

fn torsion_entry(spec: &FamilySpec) -> Result<TorsionEntry> {
    let fam = make_family(spec)?;
    let n = fam.metric.dim();
    let c = ChernConnection::new(&fam.metric);
    let t = c.torsion();
    let mut torsion = Vec::new();
    let mut antisymmetric = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                antisymmetric &= t[i][j][k].equals(&t[i][k][j].neg());
                if j < k && !t[i][j][k].is_identically_zero() {
                    torsion.push((i + 1, j + 1, k + 1, t[i][j][k].clone().simplified().to_string()));
                }
            }
        }
    }
    let tau: Vec<String> = c.torsion_form().into_iter().map(|x| x.simplified().to_string()).collect();
    let (tripod, law) = match &fam.conformal {
        Some(pair) => (Some(pair.tripod().agrees()), Some(pair.conformal_law_holds()?)),
        None => (None, None),
    };
    let dilation = if spec.family == "hopf" {
        let lambda = GaussRat::new(BigRational::from_integer(2.into()), BigRational::from_integer(1.into()));
        Some(fam.metric.is_dilation_invariant(&lambda, &dilation_points(n))?)
    } else {
        None
    };
    let checks_pass = antisymmetric && tripod.unwrap_or(true) && law.unwrap_or(true) && dilation.unwrap_or(true);
    Ok(TorsionEntry {
        family: spec.family.clone(),
        n,
        params: Value::Object(spec.params.clone()),
        kahler: torsion.is_empty(),
        torsion,
        tau,
        holomorphic_torsion: c.has_holomorphic_torsion(),
        antisymmetric,
        tripod_agrees: tripod,
        conformal_law: law,
        dilation_invariant: dilation,
        checks_pass,
    })
}

fn opt(b: Option<bool>) -> String {
    b.map_or("-".into(), |x| x.to_string())
}

pub fn torsion_report(config: &RunConfig) -> Result<Report> {
    let entries = family_specs(config)?.iter().map(torsion_entry).collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["family", "n", "params", "kahler", "holomorphic_torsion", "tripod", "dilation", "verdict"]);
    for e in &entries {
        table.push([
            e.family.clone(),
            e.n.to_string(),
            e.params.to_string(),
            e.kahler.to_string(),
            e.holomorphic_torsion.to_string(),
            opt(e.tripod_agrees),
            opt(e.dilation_invariant),
            verdict(e.checks_pass),
        ]);
    }
    let pass = entries.iter().all(|e| e.checks_pass);
    Ok(Report::new("torsion_report", config, pass, json!({ "families": entries }), table))
}

fn fixtures(config: &RunConfig) -> Result<Vec<Fixture>> {
    if let Some(text) = read_spec(config)? {
        return Ok(serde_json::from_str(&text)?);
    }
    match &config.theorem {
        Some(id) => theorem_fixture(id),
        None => Ok(all_fixtures()),
    }
}

fn fixture_report(kind: &str, fs: &[Fixture]) -> Result<(bool, Value, Table)> {
    let outcomes = run_fixtures(fs)?;
    let mut table = Table::new(&["theorem", "fixture", "positive", "check", "expected", "observed", "verdict"]);
    for o in &outcomes {
        for c in &o.checks {
            table.push([
                o.theorem.clone(),
                o.label.clone(),
                o.positive.to_string(),
                c.check.clone(),
                c.expected.clone(),
                c.observed.clone(),
                verdict(c.pass),
            ]);
        }
    }
    let pass = outcomes.iter().all(|o| o.pass);
    Ok((pass, json!({ "kind": kind, "fixtures": outcomes }), table))
}

pub fn weight_scan(config: &RunConfig) -> Result<Report> {
    let (pass, data, table) = fixture_report("weight_scan", &fixtures(config)?)?;
    Ok(Report::new("weight_scan", config, pass, data, table))
}

pub fn spectrum(config: &RunConfig) -> Result<Report> {
    let mut scans = Vec::new();
    let mut table = Table::new(&["n", "alpha", "m", "eigenvalue", "multiplicity"]);
    let mut summary = Vec::new();
    let mut pass = true;
    for &n in &config.n {
        for alpha in config.alphas()? {
            let s = first_eigenvalue_scan(n, &alpha, config.m_max)?.result;
            for r in &s.reports {
                for c in &r.eigenvalues {
                    table.push([n.to_string(), r.alpha.clone(), r.m.to_string(), format!("{}", c.value), c.multiplicity.to_string()]);
                }
            }
            let nu = crate::field::rat_to_f64(&parse_exact(&s.nu)?);
            let close = (s.lambda1 - nu).abs() <= config.tol * nu.abs().max(1.0);
            let ok = s.pass && close;
            pass &= ok;
            summary.push(json!({
                "n": n, "alpha": s.alpha, "lambda1": s.lambda1, "nu": s.nu,
                "multiplicity": s.multiplicity, "eigenspace": s.eigenspace, "verdict": verdict(ok),
            }));
            scans.push(s);
        }
    }
    Ok(Report::new("spectrum", config, pass, json!({ "summary": summary, "scans": scans }), table))
}

/// Grid size for the membership table.
const C2_GRID: u32 = 8;

pub fn c2(config: &RunConfig) -> Result<Report> {
    let rows = c2_spectrum(config.value_max)?;
    let mut table = Table::new(&["value", "multiplicity", "expected", "verdict"]);
    for r in &rows {
        table.push([r.value.to_string(), r.multiplicity.to_string(), r.expected.to_string(), verdict(r.multiplicity == r.expected)]);
    }
    let mut grid = Vec::new();
    let mut grid_ok = true;
    for k in 0..=C2_GRID {
        for l in 0..=C2_GRID {
            let member = c2_membership(k, l);
            let norm = c2_norm(k, l)?;
            grid_ok &= member == norm.is_finite();
            grid.push(json!({ "k": k, "l": l, "member": member, "norm": norm }));
        }
    }
    let spots: Vec<(u32, u32, C2Norm)> = [(2, 0), (3, 1), (0, 1)].iter().map(|&(k, l)| Ok((k, l, c2_norm(k, l)?))).collect::<Result<_>>()?;
    let spots_ok = spots[0].2.is_finite() && spots[1].2.is_finite() && !spots[2].2.is_finite();
    let pass = rows.iter().all(|r| r.multiplicity == r.expected) && grid_ok && spots_ok;
    let data = json!({
        "spectrum": rows,
        "membership_matches_norm": grid_ok,
        "grid": grid,
        "spot_checks": spots.iter().map(|(k, l, v)| json!({"k": k, "l": l, "norm": v})).collect::<Vec<_>>(),
    });
    Ok(Report::new("c2", config, pass, data, table))
}

pub fn solve_dbar(config: &RunConfig) -> Result<Report> {
    let text = config.eta.as_deref().ok_or_else(|| Error::InvalidParameter("--eta is required".into()))?;
    let mut results = Vec::new();
    let mut table = Table::new(&["n", "alpha", "eta", "f", "exact", "lhs", "rhs", "verdict"]);
    let mut pass = true;
    for &n in &config.n {
        let eta = MonomialForm::parse(n, text)?;
        for alpha in config.alphas()? {
            let sol = canonical_solution(&eta, &alpha)?;
            let est = estimate_check(&eta, &alpha)?;
            let residual = sol.f.dbar()?.sub(&eta);
            let ok = sol.exact && est.pass();
            pass &= ok;
            table.push([
                n.to_string(),
                format_rational(&alpha),
                eta.to_string(),
                sol.f.to_string(),
                sol.exact.to_string(),
                format!("{:.12e}", est.lhs),
                format!("{:.12e}", est.rhs),
                verdict(ok),
            ]);
            results.push(json!({ "n": n, "residual": residual.to_string(), "estimate": est, "verdict": verdict(ok) }));
        }
    }
    Ok(Report::new("solve_dbar", config, pass, json!({ "results": results }), table))
}

/// Number of random pairs per grid point in the adjointness sweep.
const ADJOINT_PAIRS: usize = 50;

/// Every fixture family at its defaults: theorems, geometry, displayed matrices, the
/// two-dimensional example and the adjointness sweep.
pub fn all(config: &RunConfig) -> Result<Report> {
    let (fix_ok, fix, mut table) = fixture_report("weight_scan", &all_fixtures())?;
    let geo = sample_specs().iter().map(torsion_entry).collect::<Result<Vec<_>>>()?;
    let geo_ok = geo.iter().all(|e| e.checks_pass);
    for e in &geo {
        table.push([s("geometry"), e.family.clone(), s("true"), s("identities"), s("true"), e.checks_pass.to_string(), verdict(e.checks_pass)]);
    }
    let minus_one = BigRational::from_integer((-1).into());
    let mut extra = Vec::new();
    for (n, m) in [(2, 1), (2, 2)] {
        let b = box1_matrix_symbolic(n, m)?;
        let ok = b.column_sums(&minus_one).iter().all(|x| *x == b.expected_column_sum(&minus_one));
        extra.push((format!("matrix n={n} m={m}"), ok));
    }
    for (n, a, m) in [(2, (-1, 1), 1), (2, (-1, 2), 2), (3, (-2, 1), 3)] {
        let r = weighted_symmetry_check(n, &BigRational::new(a.0.into(), a.1.into()), m)?;
        extra.push((format!("weighted symmetry n={n} alpha={} m={m}", r.alpha), r.pass));
    }
    for n in 1..=3 {
        for (p, q) in [(-1, 2), (-1, 1), (-3, 1)] {
            let a = BigRational::new(p.into(), q.into());
            let r = adjointness_sweep(n, &a, ADJOINT_PAIRS, config.seed)?;
            extra.push((format!("adjointness n={n} alpha={}", r.alpha), r.pass));
            let sol = canonical_solution(&MonomialForm::parse(n, "dz1")?, &a)?;
            extra.push((format!("canonical solution of dz1 n={n} alpha={}", r.alpha), sol.f.to_string() == "z1"));
        }
    }
    let c2_rows = c2_spectrum(config.value_max.max(2))?;
    extra.push(("c2 multiplicities".into(), c2_rows.iter().all(|r| r.multiplicity == r.expected)));
    for (label, ok) in &extra {
        table.push([s("dbar"), label.clone(), s("true"), s("check"), s("true"), ok.to_string(), verdict(*ok)]);
    }
    let extra_ok = extra.iter().all(|e| e.1);
    let data = json!({
        "fixtures": fix["fixtures"],
        "geometry": geo,
        "checks": extra.iter().map(|(l, ok)| json!({"check": l, "pass": ok})).collect::<Vec<_>>(),
    });
    Ok(Report::new("all_fixtures", config, fix_ok && geo_ok && extra_ok, data, table))
}

fn s(x: &str) -> String {
    x.to_string()
}
