//! One line per acceptance criterion. Exits non-zero on any unexpected outcome.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use holotorsion::bergman::*;
use holotorsion::catalog::{all_fixtures, make_family, run_fixtures, sample_specs, FamilySpec};
use holotorsion::dbar::*;
use holotorsion::field::{GaussRat, ScaledField, Slot, WPoly, WRational};
use holotorsion::geometry::{one_minus_r, ChernConnection};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn big(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let o = f();
    let el = t.elapsed();
    let ok = el <= budget;
    outcome(o.pass && ok, format!("{}; {:.2}s of {:.0}s", o.detail, el.as_secs_f64(), budget.as_secs_f64()))
}

fn aff(c: i64, a: i64) -> Affine {
    Affine::from_ints(c, a)
}

fn criterion_1() -> Outcome {
    let z = || aff(0, 0);
    let four = vec![
        vec![aff(2, -2), z(), z(), z()],
        vec![z(), aff(1, -2), aff(1, 0), z()],
        vec![z(), aff(1, 0), aff(1, -2), z()],
        vec![z(), z(), z(), aff(2, -2)],
    ];
    let six = vec![
        vec![aff(3, -3), z(), z(), z(), z(), z()],
        vec![z(), aff(1, -3), aff(1, 0), z(), z(), z()],
        vec![z(), aff(2, 0), aff(2, -3), z(), z(), z()],
        vec![z(), z(), z(), aff(2, -3), aff(2, 0), z()],
        vec![z(), z(), z(), aff(1, 0), aff(1, -3), z()],
        vec![z(), z(), z(), z(), z(), aff(3, -3)],
    ];
    let a = box1_matrix_symbolic(2, 1).unwrap().dense_symbolic() == four;
    let b = box1_matrix_symbolic(2, 2).unwrap().dense_symbolic() == six;
    outcome(a && b, format!("4x4 {}, 6x6 {}", a, b))
}

fn clusters_are(got: &[Cluster], want: &[(f64, usize)]) -> bool {
    got.len() == want.len()
        && got.iter().zip(want).all(|(g, (v, k))| g.multiplicity == *k && (g.value - v).abs() <= 1e-9 * v.abs().max(1.0))
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for a in [q(-1, 2), q(-1, 1), q(-3, 1)] {
        let x = -holotorsion::field::rat_to_f64(&a);
        let mut one = vec![(2.0 * x, 1), (2.0 * (1.0 + x), 3)];
        let mut two = vec![(3.0 * (1.0 + x), 4), (3.0 * x, 2)];
        one.sort_by(|p, q| p.0.total_cmp(&q.0));
        two.sort_by(|p, q| p.0.total_cmp(&q.0));
        for (m, want) in [(1, one), (2, two)] {
            let got = spectrum(&box1_matrix_symbolic(2, m).unwrap(), &a).unwrap();
            if !clusters_are(&got, &want) {
                bad.push(format!("m={m} alpha={a}"));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "6 spectra match".into() } else { format!("mismatch at {}", bad.join(", ")) })
}

const ALPHAS: [(i64, i64); 6] = [(-1, 4), (-1, 2), (-1, 1), (-3, 2), (-2, 1), (-5, 1)];

/// `min((m+1)(n-alpha-1), (m+1)(n-alpha-2) if the second eigenvalue exists)` over `m`.
fn nu_oracle(n: usize, a: &BigRational) -> BigRational {
    let mut best: Option<BigRational> = None;
    for m in 0..=10i64 {
        let mut cands = vec![big(m + 1) * (big(n as i64 - 1) - a)];
        // the second eigenvalue exists unless the top eigenspace is the whole piece
        let total = n as i64 * binom(n as i64 + m - 1, n as i64 - 1);
        if total > binom(n as i64 + m, n as i64 - 1) {
            cands.push(big(m + 1) * (big(n as i64 - 2) - a));
        }
        for c in cands {
            best = Some(match best {
                Some(b) if b <= c => b,
                _ => c,
            });
        }
    }
    best.unwrap()
}

fn binom(a: i64, b: i64) -> i64 {
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1..=5 {
        for (p, d) in ALPHAS {
            let a = q(p, d);
            let s = first_eigenvalue_scan(n, &a, 10).unwrap().result;
            let nu = nu_formula(n, &a).unwrap();
            let mut ok = s.pass && nu == nu_oracle(n, &a);
            ok &= (s.lambda1 - holotorsion::field::rat_to_f64(&nu)).abs() <= 1e-9 * s.lambda1.abs().max(1.0);
            if n == 2 {
                let want = if a > big(-1) { 1 } else if a == big(-1) { 3 } else { 2 };
                ok &= s.multiplicity == want && s.eigenspace.len() == want;
            }
            checked += 1;
            if !ok {
                bad.push(format!("n={n} alpha={a}"));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{checked} scans, lambda1 = nu") } else { format!("mismatch at {}", bad.join(", ")) })
}

struct Gersh {
    containment: bool,
    column_sums: bool,
    bound_ok: bool,
    /// Every violating row lies in the degree-zero piece.
    violations_only_at_m0: bool,
    violations: Vec<String>,
}

fn gershgorin_sweep() -> Gersh {
    let mut g = Gersh { containment: true, column_sums: true, bound_ok: true, violations_only_at_m0: true, violations: Vec::new() };
    for n in 1..=5 {
        for m in 0..=10 {
            let b = box1_matrix_symbolic(n, m).unwrap();
            for (p, d) in ALPHAS {
                let a = q(p, d);
                let gs = b.gershgorin(&a).unwrap();
                let min_eig = eigenvalues(&b, &a).unwrap().into_iter().fold(f64::INFINITY, f64::min);
                let md = holotorsion::field::rat_to_f64(&gs.min_delta);
                g.containment &= min_eig >= md - 1e-9 * md.abs().max(1.0);
                let want = big(m as i64 + 1) * (big(n as i64 - 1) - &a);
                g.column_sums &= b.column_sums(&a).iter().all(|s| *s == want);
                if !gs.bound_holds() {
                    g.bound_ok = false;
                    g.violations_only_at_m0 &= m == 0;
                    g.violations.push(format!("n={n} alpha={a} m={m}"));
                }
            }
        }
    }
    g
}

fn criterion_4(g: &Gersh) -> Outcome {
    let head = format!("containment {}, column sums {}, delta >= 2(n-alpha-2) {}", g.containment, g.column_sums, g.bound_ok);
    if g.bound_ok {
        return outcome(g.containment && g.column_sums, head);
    }
    outcome(
        false,
        format!(
            "{head}; bound fails on {} matrices, all degree zero (delta = n-alpha-1 there): {}",
            g.violations.len(),
            g.violations.join(" ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let rows = c2_spectrum(21).unwrap();
    let mults = rows.iter().all(|r| r.multiplicity == 2 * (r.value as usize - 1) - 1) && rows.len() == 20;
    let mut relations = true;
    for k in 0..=20u32 {
        for l in 0..=20u32 {
            relations &= c2_eigenvalue(k, l, 0).unwrap() == Some(k + 1);
            relations &= c2_eigenvalue(k, l, 1).unwrap() == Some(k);
        }
    }
    let mut grid = true;
    for k in 0..=8 {
        for l in 0..=8 {
            grid &= c2_membership(k, l) == c2_norm(k, l).unwrap().is_finite();
        }
    }
    outcome(mults && relations && grid, format!("multiplicities {mults}, eigen-relations {relations}, membership grid {grid}"))
}

fn criterion_6() -> Outcome {
    let mut fails: Vec<String> = Vec::new();
    for spec in sample_specs() {
        let f = make_family(&spec).unwrap();
        let g = &f.metric;
        let n = g.dim();
        let c = ChernConnection::new(g);
        let t = c.torsion();
        let rt = c.raised_torsion();
        let mut ok = g.inverse_is_exact();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ok &= t[i][j][k].equals(&t[i][k][j].neg()) && rt[i][j][k].equals(&rt[i][k][j].neg());
                }
            }
        }
        if let Some(pair) = &f.conformal {
            ok &= pair.tripod().agrees();
        }
        if !ok {
            fails.push(spec.family.clone());
        }
    }
    for n in 1..=3 {
        let h = make_family(&FamilySpec::new("half_hyperbolic", n)).unwrap().metric;
        let c = ChernConnection::new(&h);
        let d = one_minus_r(n).inv().unwrap();
        let r = c.curvature_values();
        let mut ok = true;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        ok &= r[i][j][k][l].equals(&h.base()[i][l].mul(&h.base()[k][j]).mul(&d).neg());
                    }
                }
            }
        }
        let ric = c.ricci();
        for a in 0..n {
            for b in 0..n {
                ok &= ric.first[a][b].equals(&ric.second[a][b]);
            }
        }
        let (s, sh) = c.scalar_curvatures();
        ok &= s.equals(&ScaledField::rational(d.scale_int(-(n as i64))));
        ok &= sh.equals(&ScaledField::rational(d.scale_int(-((n * n) as i64))));
        if !ok {
            fails.push(format!("half_hyperbolic n={n}"));
        }
    }
    for n in [2, 3] {
        for (beta, bq) in [("-1", q(-1, 1)), ("0", q(0, 1)), ("1/2", q(1, 2)), ("1", q(1, 1)), ("2", q(2, 1))] {
            let f = make_family(&FamilySpec::new("beta_family", n).with("beta", json!(beta))).unwrap();
            let c = ChernConnection::new(&f.metric);
            let coef = -bq * big(n as i64 - 1);
            let inv = one_minus_r(n).inv().unwrap();
            let tau_ok = c
                .torsion_form()
                .iter()
                .enumerate()
                .all(|(j, x)| x.equals(&WRational::zbar(n, j).mul(&inv).scale(&GaussRat::real(coef.clone()))));
            let holo_ok = c.has_holomorphic_torsion() == (beta == "0" || beta == "1");
            if !(tau_ok && holo_ok) {
                fails.push(format!("beta_family n={n} beta={beta}"));
            }
        }
    }
    outcome(fails.is_empty(), if fails.is_empty() { "all families".into() } else { format!("failed: {}", fails.join(", ")) })
}

fn criterion_7() -> Outcome {
    let fixtures = all_fixtures();
    let out = run_fixtures(&fixtures).unwrap();
    let mut by: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    for o in &out {
        let e = by.entry(o.theorem.clone()).or_default();
        if o.positive {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
        if !o.pass {
            e.2 += 1;
        }
    }
    let failed: Vec<&str> = out.iter().filter(|o| !o.pass).map(|o| o.label.as_str()).collect();
    let cross = out.iter().filter(|o| o.theorem == "un_invariant" && o.label.contains("reconstructs half hyperbolic")).all(|o| o.pass)
        && out.iter().any(|o| o.label.contains("reconstructs half hyperbolic"));
    let every_negative = by.iter().filter(|(k, _)| k.as_str() != "c2_example").all(|(_, v)| v.1 > 0);
    outcome(
        failed.is_empty() && cross && every_negative,
        format!("{} fixtures over {} theorems, cross-check {cross}, failures [{}]", out.len(), by.len(), failed.join(", ")),
    )
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let alphas = [q(-1, 2), q(-1, 1), q(-3, 1)];
    let mut adj = true;
    let mut est = true;
    let mut canon = true;
    for n in 1..=3 {
        for a in &alphas {
            adj &= adjointness_sweep(n, a, 50, 0x5EED).unwrap().pass;
            let mut etas = vec!["dz1", "2*z1*dz1", "z1^2*dz1"];
            if n >= 2 {
                etas.push("z1*z2*dz1 + 1/2*z1^2*dz2");
            }
            for e in etas {
                let r = estimate_check(&MonomialForm::parse(n, e).unwrap(), a).unwrap();
                if !r.pass() {
                    est = false;
                    notes.push(format!("{e} n={n} alpha={a}"));
                }
            }
            let s = canonical_solution(&MonomialForm::parse(n, "dz1").unwrap(), a).unwrap();
            let z1 = MonomialForm::function(MultiIndex::unit(n, 0), GaussRat::one());
            canon &= s.exact && s.f == z1;
        }
    }
    let mut quad = true;
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for m in 0..=4 {
            for lam in multi_indices(n, m) {
                for c in [0.0, 0.5, 1.0, 2.0] {
                    let x = monomial_integral(&lam, &lam, c, n).unwrap();
                    let y = quadrature_pairing(&lam, &lam, c).unwrap().re;
                    let rel = (x - y).abs() / x;
                    worst = worst.max(rel);
                    quad &= rel <= 1e-9;
                }
            }
        }
    }
    outcome(
        adj && est && canon && quad,
        format!("adjointness {adj}, estimates {est}, canonical z1 {canon}, quadrature {quad} (worst {worst:.1e}) {}", notes.join(" ")),
    )
}

fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    let d = rng.gen_range(1..=3);
    GaussRat::new(q(rng.gen_range(-5..=5), d), q(rng.gen_range(-5..=5), d))
}

fn random_one_form(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> MonomialForm {
    let mut u = MonomialForm::zero(n, 1);
    for _ in 0..rng.gen_range(1..=5) {
        let deg = rng.gen_range(0..=max_deg);
        let mut lam = vec![0u32; n];
        for _ in 0..deg {
            lam[rng.gen_range(0..n)] += 1;
        }
        u.add_term(MultiIndex(lam), FormIndex::One(rng.gen_range(0..n)), random_gauss(rng));
    }
    u
}

fn random_field(rng: &mut ChaCha8Rng, n: usize) -> WRational {
    let mut p = WPoly::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let e = (0..2 * n).map(|_| rng.gen_range(0..=3u16)).collect();
        p = p.add(&WPoly::monomial(n, e, random_gauss(rng)));
    }
    let den = WRational::one(n).sub(&WRational::r(n)).pow(rng.gen_range(0..=2)).unwrap();
    WRational::from_poly(p).div(&den).unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut fails = BTreeMap::<&str, usize>::new();
    let alphas = [q(-1, 2), q(-1, 1), q(-3, 1)];
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let f = random_field(&mut rng, n);
        let slots: Vec<Slot> = (0..n).flat_map(|k| [Slot::Holo(k), Slot::Anti(k)]).collect();
        for &x in &slots {
            for &y in &slots {
                if !f.wirtinger(x).wirtinger(y).equals(&f.wirtinger(y).wirtinger(x)) {
                    *fails.entry("mixed partials").or_default() += 1;
                }
            }
        }
        if !f.conj().conj().equals(&f) {
            *fails.entry("conjugation").or_default() += 1;
        }
        let mut g = MonomialForm::zero(n, 0);
        for _ in 0..3 {
            let lam = (0..n).map(|_| rng.gen_range(0..=4)).collect();
            g = g.add(&MonomialForm::function(MultiIndex(lam), random_gauss(&mut rng)));
        }
        if !g.dbar().unwrap().dbar().unwrap().is_zero() {
            *fails.entry("d d = 0").or_default() += 1;
        }
    }
    for i in 0..200 {
        let n = rng.gen_range(1..=3);
        let u = random_one_form(&mut rng, n, 6);
        let a = &alphas[i % 3];
        if box1_apply(&u, a).unwrap() != box1_composed(&u, a).unwrap() {
            *fails.entry("box1 composition").or_default() += 1;
        }
    }
    let mut herm = 0;
    for n in 1..=3 {
        for m in 0..=6 {
            let b = box1_matrix_symbolic(n, m).unwrap();
            for a in &alphas {
                let dense = b.dense(a);
                let c = -a.clone() - big(1);
                for block in b.blocks() {
                    let g = gram_entries(&b.basis, &block, &c).unwrap();
                    let k = block.len();
                    let ga = |i: usize, j: usize| {
                        (0..k).fold(BigRational::zero(), |acc, t| acc + &g[i][t] * &dense[block[t]][block[j]])
                    };
                    for i in 0..k {
                        for j in i + 1..k {
                            if ga(i, j) != ga(j, i) {
                                herm += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    if herm > 0 {
        fails.insert("weighted hermiticity", herm);
    }
    let total: usize = fails.values().sum();
    outcome(total == 0, if total == 0 { "zero failures".into() } else { format!("{fails:?}") })
}

fn main() -> ExitCode {
    let mut results = vec![
        (1, timed(Duration::from_secs(1), criterion_1)),
        (2, timed(Duration::from_secs(1), criterion_2)),
        (3, timed(Duration::from_secs(120), criterion_3)),
    ];
    let t = Instant::now();
    let g = gershgorin_sweep();
    let mut c4 = criterion_4(&g);
    c4.detail = format!("{}; {:.2}s", c4.detail, t.elapsed().as_secs_f64());
    // the bound is only broken where delta is the diagonal n-alpha-1, which is below 2(n-alpha-2) once n-alpha > 3
    let c4_as_expected = g.containment && g.column_sums && (g.bound_ok || g.violations_only_at_m0);
    results.push((4, c4));
    results.push((5, timed(Duration::from_secs(30), criterion_5)));
    results.push((6, timed(Duration::from_secs(60), criterion_6)));
    results.push((7, timed(Duration::from_secs(60), criterion_7)));
    results.push((8, timed(Duration::from_secs(120), criterion_8)));
    results.push((9, timed(Duration::from_secs(120), criterion_9)));
    let mut unexpected = false;
    for (k, o) in &results {
        println!("criterion {k}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !(*k == 4 && c4_as_expected) {
            unexpected = true;
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
