//! Named metric families and their JSON descriptions.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::field::{parse_expr, parse_rational, GaussRat, ScaledField, WPoly, WRational};
use crate::geometry::{
    conformal_metric, identity, metric_from_potential, one_minus_r, one_plus_r, ConformalPair, MetricField,
    MultiRadialPotential, RadialProfile,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Ball,
    UnitPolydisk,
    FullSpace,
    PositivityRegion,
    PuncturedSpace,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("serializable");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

pub const FAMILIES: &[&str] = &[
    "flat",
    "hyperbolic",
    "half_hyperbolic",
    "beta_family",
    "conformally_flat_quadratic",
    "fubini_study_chart",
    "fs_conformal",
    "conformal_ball",
    "hopf",
    "multiradial_potential",
    "decoupled_potential",
    "product_potential",
    "c2_example",
    "un_invariant_conformal",
];

/// `{family, n, params, domain}`; rationals as `"p/q"`, complex numbers as
/// `{"re", "im"}` objects or `"a+bi"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: String,
    pub n: usize,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default)]
    pub domain: Option<Domain>,
}

impl FamilySpec {
    pub fn new(family: &str, n: usize) -> Self {
        FamilySpec { family: family.to_string(), n, params: Map::new(), domain: None }
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.params.insert(key.to_string(), v);
        self
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub spec: FamilySpec,
    pub domain: Domain,
    pub metric: MetricField,
    /// Present for metrics built as `phi^{-1}` times a Kahler metric.
    pub conformal: Option<ConformalPair>,
    /// Present for metrics built from a multi-radial or radial potential.
    pub potential: Option<MultiRadialPotential>,
    /// `phi~(r) = C2 r h~'(r) + C3` for the unitary-invariant family.
    pub un_factor: Option<(WRational, BigRational)>,
}

pub fn get_rational(p: &Map<String, Value>, key: &str, default: Option<&str>) -> Result<BigRational> {
    match p.get(key) {
        Some(Value::String(s)) => parse_rational(s),
        Some(Value::Number(x)) => parse_rational(&x.to_string()),
        Some(_) => Err(Error::Parse(format!("`{key}` must be a rational string"))),
        None => match default {
            Some(d) => parse_rational(d),
            None => Err(Error::InvalidParameter(format!("missing parameter `{key}`"))),
        },
    }
}

pub fn parse_complex(v: &Value) -> Result<GaussRat> {
    match v {
        Value::String(s) => GaussRat::parse(s),
        Value::Number(x) => GaussRat::parse(&x.to_string()),
        Value::Object(m) => {
            let part = |k: &str| -> Result<BigRational> {
                match m.get(k) {
                    None => Ok(BigRational::zero()),
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(x)) => parse_rational(&x.to_string()),
                    _ => Err(Error::Parse(format!("bad complex part `{k}`"))),
                }
            };
            Ok(GaussRat::new(part("re")?, part("im")?))
        }
        _ => Err(Error::Parse("bad complex number".into())),
    }
}

fn profile(v: &Value) -> Result<RadialProfile> {
    Ok(serde_json::from_value(v.clone())?)
}

/// `sum c_{jk} z_j zbar_k + Re(sum alpha_k z_k) + gamma` from the params.
pub fn quadratic_phi(n: usize, p: &Map<String, Value>, default_c: &str, default_gamma: &str) -> Result<WRational> {
    let mut phi = WRational::zero(n);
    match p.get("c") {
        Some(Value::Array(rows)) => {
            if rows.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
            }
            let mut c = vec![vec![GaussRat::zero(); n]; n];
            for (j, row) in rows.iter().enumerate() {
                let row = row.as_array().ok_or_else(|| Error::Parse("`c` rows must be arrays".into()))?;
                if row.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: row.len() });
                }
                for (k, x) in row.iter().enumerate() {
                    c[j][k] = parse_complex(x)?;
                }
            }
            for j in 0..n {
                for k in 0..n {
                    if c[j][k] != c[k][j].conj() {
                        return Err(Error::InvalidParameter("`c` must be Hermitian".into()));
                    }
                    let t = WRational::z(n, j).mul(&WRational::zbar(n, k)).scale(&c[j][k]);
                    phi = phi.add(&t);
                }
            }
        }
        Some(_) => return Err(Error::Parse("`c` must be a matrix".into())),
        None => {
            let c = parse_rational(default_c)?;
            phi = phi.add(&WRational::r(n).scale(&GaussRat::real(c)));
        }
    }
    if let Some(v) = p.get("alpha_k") {
        let xs = v.as_array().ok_or_else(|| Error::Parse("`alpha_k` must be an array".into()))?;
        if xs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: xs.len() });
        }
        let half = GaussRat::from_ratio(1, 2);
        for (k, x) in xs.iter().enumerate() {
            let a = parse_complex(x)?;
            let t = WRational::z(n, k).scale(&a).add(&WRational::zbar(n, k).scale(&a.conj())).scale(&half);
            phi = phi.add(&t);
        }
    }
    let gamma = get_rational(p, "gamma", Some(default_gamma))?;
    phi = phi.add(&WRational::constant(n, GaussRat::real(gamma)));
    Ok(phi.add(&phi_extra(n, p)?))
}

/// Optional `phi_extra` expression, used to perturb a conformal factor.
pub fn phi_extra(n: usize, p: &Map<String, Value>) -> Result<WRational> {
    match p.get("phi_extra") {
        Some(e) => parse_expr(n, e),
        None => Ok(WRational::zero(n)),
    }
}

fn hyperbolic(n: usize) -> Result<MetricField> {
    let a = one_minus_r(n).inv()?;
    MetricField::rank_one(n, &a, &a)
}

fn half_hyperbolic(n: usize) -> Result<MetricField> {
    MetricField::rank_one(n, &WRational::one(n), &one_minus_r(n).inv()?)
}

fn fubini_study(n: usize) -> Result<MetricField> {
    let a = one_plus_r(n).inv()?;
    MetricField::rank_one(n, &a, &a.neg())
}

fn flat(n: usize) -> Result<MetricField> {
    MetricField::with_inverse(identity(n), identity(n))
}

fn pair(h: MetricField, phi: WRational) -> Result<(MetricField, Option<ConformalPair>)> {
    let c = conformal_metric(&h, &ScaledField::rational(phi))?;
    Ok((c.metric.clone(), Some(c)))
}

pub fn make_family(spec: &FamilySpec) -> Result<Family> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let p = &spec.params;
    let mut potential = None;
    let mut un_factor = None;
    let (domain, metric, conformal) = match spec.family.as_str() {
        "flat" => {
            potential = Some(MultiRadialPotential::radial(n, &RadialProfile::polynomial(&[BigRational::zero(), BigRational::one()]))?);
            (Domain::FullSpace, flat(n)?, None)
        }
        "hyperbolic" => {
            potential = Some(MultiRadialPotential::radial(n, &RadialProfile::NegLogOneMinus)?);
            (Domain::Ball, hyperbolic(n)?, None)
        }
        "half_hyperbolic" => {
            let c = conformal_metric(&hyperbolic(n)?, &ScaledField::rational(one_minus_r(n).inv()?))?;
            (Domain::Ball, half_hyperbolic(n)?, Some(c))
        }
        "beta_family" => {
            let beta = get_rational(p, "beta", None)?;
            let base = WPoly::one(n).sub(&WPoly::r(n));
            let phi = ScaledField::with_powers(WRational::one(n), vec![(base, -beta.clone())])?;
            let c = conformal_metric(&hyperbolic(n)?, &phi)?;
            let metric = if beta.is_integer() {
                let k = beta.to_integer().try_into().map_err(|_| Error::InvalidParameter("beta too large".into()))?;
                let a = one_minus_r(n).pow(k)?.mul(&one_minus_r(n).inv()?).simplified();
                MetricField::rank_one(n, &a, &one_minus_r(n).inv()?)?
            } else {
                c.metric.clone()
            };
            (Domain::Ball, metric, Some(c))
        }
        "conformally_flat_quadratic" => {
            let (m, c) = pair(flat(n)?, quadratic_phi(n, p, "0", "1")?)?;
            (Domain::PositivityRegion, m, c)
        }
        "hopf" => {
            let (m, c) = pair(flat(n)?, WRational::r(n).scale(&GaussRat::from_ratio(1, 4)))?;
            (Domain::PuncturedSpace, m, c)
        }
        "fubini_study_chart" => {
            potential = Some(MultiRadialPotential::radial(n, &RadialProfile::LogOnePlus)?);
            (Domain::FullSpace, fubini_study(n)?, None)
        }
        "fs_conformal" => {
            let phi = quadratic_phi(n, p, "0", "1")?.div(&one_plus_r(n))?;
            let (m, c) = pair(fubini_study(n)?, phi)?;
            (Domain::PositivityRegion, m, c)
        }
        "conformal_ball" => {
            let phi = quadratic_phi(n, p, "0", "1")?.div(&one_minus_r(n))?;
            let (m, c) = pair(hyperbolic(n)?, phi)?;
            (Domain::Ball, m, c)
        }
        "multiradial_potential" => {
            let pot = if let Some(e) = p.get("potential") {
                MultiRadialPotential::from_function(&parse_expr(n, e)?)?
            } else if let Some(Value::Array(g)) = p.get("potential_gradient") {
                MultiRadialPotential::from_gradient(g.iter().map(|e| parse_expr(n, e)).collect::<Result<_>>()?)?
            } else {
                return Err(Error::InvalidParameter("need `potential` or `potential_gradient`".into()));
            };
            let m = metric_from_potential(&pot)?;
            potential = Some(pot);
            (Domain::PositivityRegion, m, None)
        }
        "decoupled_potential" | "product_potential" => {
            let key = if spec.family == "decoupled_potential" { "profiles" } else { "factors" };
            let xs = p
                .get(key)
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::InvalidParameter(format!("missing `{key}` array")))?;
            if xs.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: xs.len() });
            }
            let profs: Vec<RadialProfile> = xs.iter().map(profile).collect::<Result<_>>()?;
            let pot = if key == "profiles" {
                MultiRadialPotential::decoupled(&profs)?
            } else {
                MultiRadialPotential::product(&profs)?
            };
            let dom = if profs.iter().any(|f| *f == RadialProfile::NegLogOneMinus) {
                Domain::UnitPolydisk
            } else {
                Domain::PositivityRegion
            };
            let m = metric_from_potential(&pot)?;
            potential = Some(pot);
            (dom, m, None)
        }
        "c2_example" => {
            if n != 2 {
                return Err(Error::InvalidParameter("c2_example is two-dimensional".into()));
            }
            let pot = MultiRadialPotential::from_function(&c2_potential())?;
            let m = metric_from_potential(&pot)?;
            potential = Some(pot);
            (Domain::FullSpace, m, None)
        }
        "un_invariant_conformal" => {
            let prof = profile(p.get("profile").ok_or_else(|| Error::InvalidParameter("missing `profile`".into()))?)?;
            let c2 = get_rational(p, "c2", Some("1"))?;
            let c3 = get_rational(p, "c3", Some("1"))?;
            let pot = MultiRadialPotential::radial(n, &prof)?;
            let h = metric_from_potential(&pot)?;
            let r = WRational::r(n);
            let phi = r
                .mul(&prof.d1(&r)?)
                .scale(&GaussRat::real(c2.clone()))
                .add(&WRational::constant(n, GaussRat::real(c3)))
                .add(&phi_extra(n, p)?)
                .simplified();
            if phi.is_identically_zero() {
                return Err(Error::InvalidParameter("conformal factor vanishes".into()));
            }
            un_factor = Some((phi.clone(), c2));
            potential = Some(pot);
            let dom = match prof {
                RadialProfile::NegLogOneMinus => Domain::Ball,
                _ => Domain::PositivityRegion,
            };
            let (m, c) = pair(h, phi)?;
            (dom, m, c)
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(Family { spec: spec.clone(), domain: spec.domain.unwrap_or(domain), metric, conformal, potential, un_factor })
}

/// `r1^2/4 + r1 r2 + r1 + r2`.
pub fn c2_potential() -> WRational {
    let n = 2;
    let r1 = WRational::r_k(n, 0);
    let r2 = WRational::r_k(n, 1);
    r1.mul(&r1).scale(&GaussRat::from_ratio(1, 4)).add(&r1.mul(&r2)).add(&r1).add(&r2)
}

pub fn parse_family_spec(json: &str) -> Result<FamilySpec> {
    Ok(serde_json::from_str(json)?)
}
