//! Classification results as executable fixtures.
//!
//! Each fixture pairs a metric family with an optional weight and a list of
//! predicate outcomes. Positive fixtures sit inside the classified family,
//! negative ones perturb a single ingredient.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::family::{make_family, Family, FamilySpec};
use super::weights::{make_weight, WeightSpec};
use crate::error::{Error, Result};
use crate::field::{parse_expr, parse_rational, GaussRat, ScaledField, WRational};
use crate::geometry::{
    fields_equal, gradient_field, gradient_minus_torsion, is_gradient_minus_torsion_holomorphic,
    is_real_holomorphic_gradient, ChernConnection, WeightField,
};

pub const THEOREM_IDS: &[&str] = &[
    "multiradial",
    "decoupled",
    "product",
    "conformally_flat",
    "fs_conformal",
    "conformal_ball",
    "ball_log_weight",
    "half_hyperbolic_log_weight",
    "fs_log_weight",
    "beta_family",
    "un_invariant",
    "c2_example",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Expectation {
    HolomorphicTorsion { holds: bool },
    /// The three conformal predicates agree.
    TripodAgrees,
    /// `T = sigma (x) delta - delta (x) sigma` and `tau = (n-1) sigma`.
    ConformalLaw,
    RealHolomorphicGradient { holds: bool },
    /// `(dbar psi)^sharp = sum_j C_j z_j d_j`.
    GradientIsEuler { c: Vec<String> },
    GradientMinusTorsionHolomorphic { holds: bool },
    /// `(dbar psi - taubar)^sharp = C sum_j z_j d_j`.
    GradientMinusTorsionIsEuler { c: String },
    MetricEqualsFamily { family: FamilySpec },
    MetricEntries { entries: Vec<Vec<Value>> },
    TorsionForm { tau: Vec<Value> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub theorem: String,
    pub label: String,
    pub positive: bool,
    pub family: FamilySpec,
    #[serde(default)]
    pub weight: Option<WeightSpec>,
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub theorem: String,
    pub label: String,
    pub positive: bool,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

fn fixture(theorem: &str, label: &str, positive: bool, family: FamilySpec, weight: Option<WeightSpec>, expect: Vec<Expectation>) -> Fixture {
    Fixture { theorem: theorem.into(), label: label.into(), positive, family, weight, expect }
}

fn s(x: &str) -> String {
    x.to_string()
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn identity_c(n: usize, sign: i64) -> Value {
    Value::Array(
        (0..n)
            .map(|j| Value::Array((0..n).map(|k| json!(if j == k { sign.to_string() } else { s("0") })).collect()))
            .collect(),
    )
}

fn poly(coeffs: &[&str]) -> Value {
    json!({"kind": "polynomial", "coeffs": coeffs})
}

fn explicit(psi: Value) -> Option<WeightSpec> {
    Some(WeightSpec::Explicit { psi })
}

/// `psi_kbar = z_k (1 - |z|^2)^{-2}`.
fn squared_log_components(n: usize) -> Option<WeightSpec> {
    let dbar = (1..=n).map(|k| json!({"div": [{"var": format!("z{k}")}, {"pow": [{"sub": [1, {"var": "r"}]}, 2]}]})).collect();
    Some(WeightSpec::Components { dbar })
}

fn log_ball(a: &str, b: &str) -> Option<WeightSpec> {
    Some(WeightSpec::LogBall { a: s(a), b: s(b) })
}

fn log_plus(a: &str, b: &str) -> Option<WeightSpec> {
    Some(WeightSpec::LogPlus { a: s(a), b: s(b) })
}

fn multiradial(c0: &str, c: &[&str]) -> Option<WeightSpec> {
    Some(WeightSpec::Multiradial { c0: s(c0), c: strs(c) })
}

const PHI_BUMP: &str = "phi_extra";

/// `z_1^2 zbar_1^2`.
fn bump() -> Value {
    json!({"pow": [{"var": "r1"}, 2]})
}

fn conformal_checks(holds: bool) -> Vec<Expectation> {
    vec![Expectation::HolomorphicTorsion { holds }, Expectation::TripodAgrees, Expectation::ConformalLaw]
}

fn multiradial_fixtures() -> Vec<Fixture> {
    let id = "multiradial";
    let mut out = Vec::new();
    let chi2 = json!({"add": [{"var": "r1"}, {"var": "r2"}, {"mul": [{"var": "r1"}, {"var": "r2"}]}]});
    let f2 = FamilySpec::new("multiradial_potential", 2).with("potential", chi2);
    let chi1 = json!({"add": [{"var": "r"}, {"pow": [{"var": "r"}, 2]}]});
    let f1 = FamilySpec::new("multiradial_potential", 1).with("potential", chi1);
    let chi3 = json!({"add": [{"var": "r"}, {"mul": [{"var": "r1"}, {"var": "r2"}, {"var": "r3"}]}]});
    let f3 = FamilySpec::new("multiradial_potential", 3).with("potential", chi3);
    let grad = json!([{"div": [1, {"sub": [1, {"var": "r1"}]}]}, {"add": [1, {"var": "r2"}]}]);
    let fg = FamilySpec::new("multiradial_potential", 2).with("potential_gradient", grad);
    for (label, f, c) in [
        ("n2 r1+r2+r1r2", &f2, vec!["2", "-1"]),
        ("n1 r+r^2", &f1, vec!["3"]),
        ("n3 r+r1r2r3", &f3, vec!["1", "-2", "1/2"]),
        ("n2 from gradient", &fg, vec!["1", "1"]),
    ] {
        out.push(fixture(
            id,
            label,
            true,
            f.clone(),
            multiradial("1", &c),
            vec![Expectation::RealHolomorphicGradient { holds: true }, Expectation::GradientIsEuler { c: strs(&c) }],
        ));
    }
    let bad = json!({"add": [{"var": "r1"}, {"var": "r2"}, {"mul": [{"var": "r1"}, {"var": "r2"}]}, {"pow": [{"var": "r1"}, 2]}]});
    out.push(fixture(id, "n2 potential plus r1^2", false, f2, explicit(bad), vec![Expectation::RealHolomorphicGradient { holds: false }]));
    let bad1 = json!({"pow": [{"var": "r"}, 3]});
    out.push(fixture(id, "n1 weight r^3", false, f1, explicit(bad1), vec![Expectation::RealHolomorphicGradient { holds: false }]));
    out
}

fn decoupled_fixtures() -> Vec<Fixture> {
    let id = "decoupled";
    let neglog = json!({"kind": "neg_log_one_minus"});
    let mixed = FamilySpec::new("decoupled_potential", 2).with("profiles", json!([neglog, poly(&["0", "1", "1/2"])]));
    let polydisk = FamilySpec::new("decoupled_potential", 2).with("profiles", json!([neglog, neglog]));
    let mut out = vec![
        fixture(
            id,
            "mixed profiles",
            true,
            mixed.clone(),
            multiradial("0", &["1", "2"]),
            vec![Expectation::GradientIsEuler { c: strs(&["1", "2"]) }],
        ),
        fixture(
            id,
            "polydisk weight",
            true,
            polydisk.clone(),
            Some(WeightSpec::Polydisk { gamma0: s("1"), gammas: strs(&["3", "-1/2"]) }),
            vec![Expectation::RealHolomorphicGradient { holds: true }, Expectation::GradientIsEuler { c: strs(&["3", "-1/2"]) }],
        ),
    ];
    let inv_sq = json!({"pow": [{"sub": [1, {"var": "r1"}]}, -2]});
    out.push(fixture(id, "polydisk squared weight", false, polydisk, explicit(inv_sq), vec![Expectation::RealHolomorphicGradient { holds: false }]));
    let extra = json!({"mul": [{"var": "r1"}, {"var": "r2"}]});
    out.push(fixture(id, "mixed weight r1r2", false, mixed, explicit(extra), vec![Expectation::RealHolomorphicGradient { holds: false }]));
    out
}

fn product_fixtures() -> Vec<Fixture> {
    let id = "product";
    let g = poly(&["1", "1"]);
    let f2 = FamilySpec::new("product_potential", 2).with("factors", json!([g, g]));
    let f1 = FamilySpec::new("product_potential", 1).with("factors", json!([poly(&["1", "1", "1"])]));
    vec![
        fixture(
            id,
            "n2 (1+r1)(1+r2)",
            true,
            f2.clone(),
            multiradial("0", &["2", "5"]),
            vec![Expectation::RealHolomorphicGradient { holds: true }, Expectation::GradientIsEuler { c: strs(&["2", "5"]) }],
        ),
        fixture(id, "n2 zero constants", true, f2.clone(), multiradial("4", &["0", "0"]), vec![Expectation::GradientIsEuler { c: strs(&["0", "0"]) }]),
        fixture(id, "n1 1+r+r^2", true, f1.clone(), multiradial("0", &["3/2"]), vec![Expectation::GradientIsEuler { c: strs(&["3/2"]) }]),
        fixture(id, "n2 weight r1^2", false, f2, explicit(bump()), vec![Expectation::RealHolomorphicGradient { holds: false }]),
        fixture(id, "n1 weight r^3", false, f1, explicit(json!({"pow": [{"var": "r"}, 3]})), vec![Expectation::RealHolomorphicGradient { holds: false }]),
    ]
}

fn conformally_flat_fixtures() -> Vec<Fixture> {
    let id = "conformally_flat";
    let mut out = Vec::new();
    for n in [2, 3] {
        let plus = FamilySpec::new("conformally_flat_quadratic", n).with("c", identity_c(n, 1));
        let ball = FamilySpec::new("conformally_flat_quadratic", n).with("c", identity_c(n, -1));
        let entries: Vec<Vec<Value>> = (0..n)
            .map(|j| (0..n).map(|k| if j == k { json!({"div": [1, {"sub": [1, {"var": "r"}]}]}) } else { json!(0) }).collect())
            .collect();
        out.push(fixture(id, &format!("n{n} 1+r"), true, plus.clone(), None, conformal_checks(true)));
        let mut e = conformal_checks(true);
        e.push(Expectation::MetricEntries { entries });
        out.push(fixture(id, &format!("n{n} 1-r"), true, ball, None, e));
        out.push(fixture(id, &format!("n{n} 1+r plus bump"), false, plus.with(PHI_BUMP, bump()), None, conformal_checks(false)));
    }
    let general = FamilySpec::new("conformally_flat_quadratic", 2)
        .with("c", json!([["2", "1/2+1i"], ["1/2-1i", "3"]]))
        .with("alpha_k", json!(["1", "-2i"]))
        .with("gamma", json!("5"));
    out.push(fixture(id, "n2 general quadratic", true, general.clone(), None, conformal_checks(true)));
    out.push(fixture(id, "n2 general plus bump", false, general.with(PHI_BUMP, bump()), None, conformal_checks(false)));
    out.push(fixture(id, "hopf", true, FamilySpec::new("hopf", 2), None, conformal_checks(true)));
    out
}

fn fs_conformal_fixtures() -> Vec<Fixture> {
    let id = "fs_conformal";
    let mut out = Vec::new();
    for n in [2, 3] {
        let base = FamilySpec::new("fs_conformal", n);
        let entries: Vec<Vec<Value>> = (1..=n)
            .map(|j| {
                (1..=n)
                    .map(|k| {
                        let t = json!({"div": [{"mul": [{"var": format!("zbar{j}")}, {"var": format!("z{k}")}]}, {"add": [1, {"var": "r"}]}]});
                        if j == k { json!({"sub": [1, t]}) } else { json!({"neg": t}) }
                    })
                    .collect()
            })
            .collect();
        let mut e = conformal_checks(true);
        e.push(Expectation::MetricEntries { entries });
        out.push(fixture(id, &format!("n{n} phi = 1/(1+r)"), true, base.clone(), None, e));
        out.push(fixture(id, &format!("n{n} bump"), false, base.with(PHI_BUMP, bump()), None, conformal_checks(false)));
    }
    let general = FamilySpec::new("fs_conformal", 2)
        .with("c", identity_c(2, 1))
        .with("alpha_k", json!(["1/2", "1i"]))
        .with("gamma", json!("2"));
    out.push(fixture(id, "n2 general quadratic", true, general, None, conformal_checks(true)));
    out
}

fn conformal_ball_fixtures() -> Vec<Fixture> {
    let id = "conformal_ball";
    let mut out = Vec::new();
    for n in [2, 3] {
        let base = FamilySpec::new("conformal_ball", n);
        let mut e = conformal_checks(true);
        e.push(Expectation::MetricEqualsFamily { family: FamilySpec::new("half_hyperbolic", n) });
        out.push(fixture(id, &format!("n{n} phi = 1/(1-r)"), true, base.clone(), None, e));
        let kahler = FamilySpec::new("conformal_ball", n).with("c", identity_c(n, -1));
        out.push(fixture(id, &format!("n{n} phi = 1"), true, kahler, None, conformal_checks(true)));
        out.push(fixture(id, &format!("n{n} bump"), false, base.with(PHI_BUMP, bump()), None, conformal_checks(false)));
    }
    let general = FamilySpec::new("conformal_ball", 2)
        .with("c", json!([["1", "1i"], ["-1i", "2"]]))
        .with("alpha_k", json!(["1", "1"]))
        .with("gamma", json!("4"));
    out.push(fixture(id, "n2 general quadratic", true, general, None, conformal_checks(true)));
    out
}

fn weight_theorem(id: &str, family: &dyn Fn(usize) -> FamilySpec, good: Option<WeightSpec>, c: &str, bad: &dyn Fn(usize) -> Vec<(&'static str, Option<WeightSpec>)>) -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in [1, 2, 3] {
        out.push(fixture(
            id,
            &format!("n{n} in family"),
            true,
            family(n),
            good.clone(),
            vec![Expectation::RealHolomorphicGradient { holds: true }, Expectation::GradientIsEuler { c: vec![s(c); n] }],
        ));
        for (label, w) in bad(n) {
            out.push(fixture(id, &format!("n{n} {label}"), false, family(n), w, vec![Expectation::RealHolomorphicGradient { holds: false }]));
        }
    }
    out
}

fn ball_log_weight_fixtures() -> Vec<Fixture> {
    weight_theorem(
        "ball_log_weight",
        &|n| FamilySpec::new("conformally_flat_quadratic", n).with("c", identity_c(n, -1)),
        log_ball("2", "-3"),
        "3",
        &|n| vec![("squared log derivative", squared_log_components(n)), ("weight r", explicit(json!({"var": "r"})))],
    )
}

fn half_hyperbolic_log_weight_fixtures() -> Vec<Fixture> {
    weight_theorem(
        "half_hyperbolic_log_weight",
        &|n| FamilySpec::new("half_hyperbolic", n),
        log_ball("1", "2"),
        "-2",
        &|n| {
            vec![
                ("squared log derivative", squared_log_components(n)),
                ("weight r^2", explicit(json!({"pow": [{"var": "r"}, 2]}))),
            ]
        },
    )
}

fn fs_log_weight_fixtures() -> Vec<Fixture> {
    weight_theorem(
        "fs_log_weight",
        &|n| FamilySpec::new("fs_conformal", n),
        log_plus("0", "2"),
        "2",
        &|_| vec![("ball logarithm", log_ball("0", "1")), ("weight r", explicit(json!({"var": "r"})))],
    )
}

fn beta_family_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for beta in ["-1", "0", "1/2", "1", "2"] {
            let holds = beta == "0" || beta == "1";
            let q = parse_rational(beta).expect("grid");
            let coef = crate::field::format_rational(&(-q * num_rational::BigRational::from_integer(((n - 1) as i64).into())));
            let tau = (1..=n)
                .map(|j| json!({"div": [{"mul": [{"const": coef}, {"var": format!("zbar{j}")}]}, {"sub": [1, {"var": "r"}]}]}))
                .collect();
            let mut e = conformal_checks(holds);
            e.push(Expectation::TorsionForm { tau });
            out.push(fixture("beta_family", &format!("n{n} beta={beta}"), holds, FamilySpec::new("beta_family", n).with("beta", json!(beta)), None, e));
        }
    }
    out
}

fn un_invariant_fixtures() -> Vec<Fixture> {
    let id = "un_invariant";
    let mut out = Vec::new();
    let ball = |n: usize| {
        FamilySpec::new("un_invariant_conformal", n)
            .with("profile", json!({"kind": "neg_log_one_minus"}))
            .with("c2", json!("1"))
            .with("c3", json!("1"))
    };
    for n in [2, 3] {
        let mut e = conformal_checks(true);
        e.push(Expectation::MetricEqualsFamily { family: FamilySpec::new("half_hyperbolic", n) });
        out.push(fixture(id, &format!("n{n} reconstructs half hyperbolic"), true, ball(n), None, e));
    }
    let plus = FamilySpec::new("un_invariant_conformal", 2)
        .with("profile", json!({"kind": "log_one_plus"}))
        .with("c2", json!("2"))
        .with("c3", json!("1"));
    let polyf = FamilySpec::new("un_invariant_conformal", 2)
        .with("profile", poly(&["0", "1", "1"]))
        .with("c2", json!("1"))
        .with("c3", json!("2"));
    for (label, f, c1) in [("ball log", ball(2), "3/2"), ("ball log n3", ball(3), "-1"), ("fs log", plus.clone(), "1"), ("polynomial", polyf.clone(), "5")] {
        let w = Some(WeightSpec::UnInvariant { c1: s(c1), c5: s("0") });
        let mut e = conformal_checks(true);
        e.push(Expectation::GradientMinusTorsionHolomorphic { holds: true });
        e.push(Expectation::GradientMinusTorsionIsEuler { c: s(c1) });
        out.push(fixture(id, &format!("{label} weight"), true, f, w, e));
    }
    out.push(fixture(id, "fs log bump", false, plus.with(PHI_BUMP, bump()), None, conformal_checks(false)));
    out.push(fixture(id, "polynomial bump", false, polyf.clone().with(PHI_BUMP, bump()), None, conformal_checks(false)));
    out.push(fixture(
        id,
        "polynomial weight r^2",
        false,
        polyf,
        explicit(json!({"pow": [{"var": "r"}, 2]})),
        vec![Expectation::GradientMinusTorsionHolomorphic { holds: false }],
    ));
    out.push(fixture(
        id,
        "ball weight r",
        false,
        ball(2),
        explicit(json!({"var": "r"})),
        vec![Expectation::GradientMinusTorsionHolomorphic { holds: false }],
    ));
    out
}

fn c2_fixtures() -> Vec<Fixture> {
    let id = "c2_example";
    let f = FamilySpec::new("c2_example", 2);
    let bad = json!({"add": [{"var": "r1"}, {"mul": [{"var": "r1"}, {"var": "r2"}]}, {"mul": [{"const": "1/2"}, {"pow": [{"var": "r1"}, 2]}]}, {"pow": [{"var": "r2"}, 2]}]});
    vec![
        fixture(
            id,
            "C = (1, 0)",
            true,
            f.clone(),
            multiradial("0", &["1", "0"]),
            vec![Expectation::RealHolomorphicGradient { holds: true }, Expectation::GradientIsEuler { c: strs(&["1", "0"]) }],
        ),
        fixture(id, "C = (2, 3)", true, f.clone(), multiradial("1", &["2", "3"]), vec![Expectation::GradientIsEuler { c: strs(&["2", "3"]) }]),
        fixture(id, "weight plus r2^2", false, f, explicit(bad), vec![Expectation::RealHolomorphicGradient { holds: false }]),
    ]
}

/// Fixtures for one classification result.
pub fn theorem_fixture(id: &str) -> Result<Vec<Fixture>> {
    Ok(match id {
        "multiradial" => multiradial_fixtures(),
        "decoupled" => decoupled_fixtures(),
        "product" => product_fixtures(),
        "conformally_flat" => conformally_flat_fixtures(),
        "fs_conformal" => fs_conformal_fixtures(),
        "conformal_ball" => conformal_ball_fixtures(),
        "ball_log_weight" => ball_log_weight_fixtures(),
        "half_hyperbolic_log_weight" => half_hyperbolic_log_weight_fixtures(),
        "fs_log_weight" => fs_log_weight_fixtures(),
        "beta_family" => beta_family_fixtures(),
        "un_invariant" => un_invariant_fixtures(),
        "c2_example" => c2_fixtures(),
        other => return Err(Error::InvalidParameter(format!("unknown theorem id `{other}`"))),
    })
}

pub fn all_fixtures() -> Vec<Fixture> {
    THEOREM_IDS.iter().flat_map(|id| theorem_fixture(id).expect("known id")).collect()
}

/// One instance of every family, for identity sweeps.
pub fn sample_specs() -> Vec<FamilySpec> {
    let neglog = json!({"kind": "neg_log_one_minus"});
    vec![
        FamilySpec::new("flat", 2),
        FamilySpec::new("hyperbolic", 2),
        FamilySpec::new("half_hyperbolic", 2),
        FamilySpec::new("half_hyperbolic", 3),
        FamilySpec::new("beta_family", 2).with("beta", json!("1/2")),
        FamilySpec::new("beta_family", 2).with("beta", json!("2")),
        FamilySpec::new("conformally_flat_quadratic", 2).with("c", identity_c(2, 1)).with("alpha_k", json!(["1", "1i"])),
        FamilySpec::new("fubini_study_chart", 2),
        FamilySpec::new("fs_conformal", 2),
        FamilySpec::new("conformal_ball", 2).with("gamma", json!("2")),
        FamilySpec::new("hopf", 2),
        FamilySpec::new("multiradial_potential", 2)
            .with("potential", json!({"add": [{"var": "r1"}, {"var": "r2"}, {"mul": [{"var": "r1"}, {"var": "r2"}]}]})),
        FamilySpec::new("decoupled_potential", 2).with("profiles", json!([neglog, poly(&["0", "1", "1"])])),
        FamilySpec::new("product_potential", 2).with("factors", json!([poly(&["1", "1"]), poly(&["1", "1"])])),
        FamilySpec::new("c2_example", 2),
        FamilySpec::new("un_invariant_conformal", 2).with("profile", json!({"kind": "log_one_plus"})),
    ]
}

fn bool_check(name: &str, expected: bool, observed: bool) -> CheckOutcome {
    CheckOutcome { check: name.into(), expected: expected.to_string(), observed: observed.to_string(), pass: expected == observed }
}

fn euler(n: usize, cs: &[WRational]) -> Vec<ScaledField> {
    (0..n).map(|j| ScaledField::rational(WRational::z(n, j).mul(&cs[j]))).collect()
}

fn show(v: &[ScaledField]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.value().to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn constant(n: usize, c: &str) -> Result<WRational> {
    Ok(WRational::constant(n, GaussRat::real(parse_rational(c)?)))
}

fn need_weight<'a>(w: &'a Option<WeightField>) -> Result<&'a WeightField> {
    w.as_ref().ok_or_else(|| Error::InvalidParameter("check needs a weight".into()))
}

fn check(family: &Family, weight: &Option<WeightField>, e: &Expectation) -> Result<CheckOutcome> {
    let n = family.spec.n;
    let g = &family.metric;
    Ok(match e {
        Expectation::HolomorphicTorsion { holds } => {
            bool_check("holomorphic_torsion", *holds, ChernConnection::new(g).has_holomorphic_torsion())
        }
        Expectation::TripodAgrees => {
            let c = family.conformal.as_ref().ok_or_else(|| Error::InvalidParameter("family is not conformal".into()))?;
            let t = c.tripod();
            CheckOutcome {
                check: "tripod".into(),
                expected: "agree".into(),
                observed: format!(
                    "{}/{}/{}",
                    t.torsion_holomorphic, t.torsion_sharp_holomorphic, t.dbar_phi_sharp_holomorphic
                ),
                pass: t.agrees(),
            }
        }
        Expectation::ConformalLaw => {
            let c = family.conformal.as_ref().ok_or_else(|| Error::InvalidParameter("family is not conformal".into()))?;
            bool_check("conformal_law", true, c.conformal_law_holds()?)
        }
        Expectation::RealHolomorphicGradient { holds } => {
            bool_check("real_holomorphic_gradient", *holds, is_real_holomorphic_gradient(g, need_weight(weight)?))
        }
        Expectation::GradientIsEuler { c } => {
            if c.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: c.len() });
            }
            let cs: Vec<WRational> = c.iter().map(|x| constant(n, x)).collect::<Result<_>>()?;
            let x = gradient_field(g, need_weight(weight)?);
            let want = euler(n, &cs);
            CheckOutcome { check: "gradient_field".into(), expected: show(&want), observed: show(&x), pass: fields_equal(&x, &want) }
        }
        Expectation::GradientMinusTorsionHolomorphic { holds } => bool_check(
            "gradient_minus_torsion_holomorphic",
            *holds,
            is_gradient_minus_torsion_holomorphic(g, need_weight(weight)?),
        ),
        Expectation::GradientMinusTorsionIsEuler { c } => {
            let cs = vec![constant(n, c)?; n];
            let x = gradient_minus_torsion(g, need_weight(weight)?);
            let want = euler(n, &cs);
            CheckOutcome {
                check: "gradient_minus_torsion".into(),
                expected: show(&want),
                observed: show(&x),
                pass: fields_equal(&x, &want),
            }
        }
        Expectation::MetricEqualsFamily { family: other } => {
            let o = make_family(other)?;
            bool_check(&format!("metric_equals_{}", other.family), true, g.equals(&o.metric))
        }
        Expectation::MetricEntries { entries } => {
            if entries.len() != n || entries.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, got: entries.len() });
            }
            let mut ok = true;
            for (j, row) in entries.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    ok &= g.entry(j, k).equals(&ScaledField::rational(parse_expr(n, v)?));
                }
            }
            bool_check("metric_entries", true, ok)
        }
        Expectation::TorsionForm { tau } => {
            if tau.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: tau.len() });
            }
            let got = ChernConnection::new(g).torsion_form();
            let mut ok = true;
            for (t, v) in got.iter().zip(tau) {
                ok &= t.equals(&parse_expr(n, v)?);
            }
            let observed: Vec<String> = got.iter().map(|t| t.to_string()).collect();
            CheckOutcome { check: "torsion_form".into(), expected: "matches".into(), observed: observed.join(", "), pass: ok }
        }
    })
}

pub fn run_fixture(f: &Fixture) -> Result<FixtureOutcome> {
    let family = make_family(&f.family)?;
    let weight = f.weight.as_ref().map(|w| make_weight(&family, w)).transpose()?;
    let checks = f.expect.iter().map(|e| check(&family, &weight, e)).collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(FixtureOutcome { theorem: f.theorem.clone(), label: f.label.clone(), positive: f.positive, checks, pass })
}

/// Runs a nonempty list of fixtures.
pub fn run_fixtures(fs: &[Fixture]) -> Result<Vec<FixtureOutcome>> {
    if fs.is_empty() {
        return Err(Error::InvalidParameter("empty fixture list".into()));
    }
    fs.iter().map(run_fixture).collect()
}
