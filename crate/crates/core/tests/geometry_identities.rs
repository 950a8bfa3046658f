use holotorsion::catalog::{make_family, make_weight, sample_specs, FamilySpec, WeightSpec};
use holotorsion::field::{GaussRat, ScaledField, WRational};
use holotorsion::geometry::{
    euler_field, fields_equal, gradient_field, gradient_minus_torsion, one_minus_r, torsion_sharp, ChernConnection,
};
use num_complex::Complex64;
use serde_json::json;

fn half(n: usize) -> holotorsion::geometry::MetricField {
    make_family(&FamilySpec::new("half_hyperbolic", n)).unwrap().metric
}

fn rat(x: WRational) -> ScaledField {
    ScaledField::rational(x)
}

#[test]
fn half_hyperbolic_determinant() {
    for n in 1..=3 {
        let h = half(n);
        assert!(h.det().equals(&rat(one_minus_r(n).inv().unwrap())), "n = {n}");
    }
}

#[test]
fn half_hyperbolic_curvature_is_minus_h_h_over_one_minus_r() {
    for n in 2..=3 {
        let h = half(n);
        let c = ChernConnection::new(&h);
        let r = c.curvature_values();
        let d = one_minus_r(n).inv().unwrap();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let want = h.base()[i][l].mul(&h.base()[k][j]).mul(&d).neg();
                        assert!(r[i][j][k][l].equals(&want), "R[{i}{j}{k}{l}] n = {n}");
                    }
                }
            }
        }
    }
}

#[test]
fn half_hyperbolic_ricci_and_scalars() {
    for n in 2..=3 {
        let h = half(n);
        let c = ChernConnection::new(&h);
        let ric = c.ricci();
        for a in 0..n {
            for b in 0..n {
                assert!(ric.first[a][b].equals(&ric.second[a][b]));
            }
        }
        let (s, sh) = c.scalar_curvatures();
        let d = one_minus_r(n).inv().unwrap();
        assert!(s.equals(&rat(d.scale_int(-(n as i64)))));
        assert!(sh.equals(&rat(d.scale_int(-((n * n) as i64)))));
    }
}

#[test]
fn half_hyperbolic_raised_torsion() {
    let n = 3;
    let t = ChernConnection::new(&half(n)).raised_torsion();
    for p in 0..n {
        for r in 0..n {
            for s in 0..n {
                let mut want = WRational::zero(n);
                if r == p {
                    want = want.add(&WRational::z(n, s));
                }
                if s == p {
                    want = want.sub(&WRational::z(n, r));
                }
                assert!(t[p][r][s].equals(&rat(want)), "T_{p}^{r}{s}");
            }
        }
    }
}

#[test]
fn half_hyperbolic_sectional_curvature_is_pointwise_constant() {
    let c = ChernConnection::new(&half(2));
    let k0 = c.holomorphic_sectional_curvature(&[Complex64::new(0.0, 0.0); 2], &[Complex64::new(1.0, 0.5), Complex64::new(-0.3, 2.0)]).unwrap();
    assert!((k0 + 1.0).abs() < 1e-12);
    let z = [Complex64::new(0.2, -0.1), Complex64::new(0.3, 0.4)];
    let a = c.holomorphic_sectional_curvature(&z, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
    let b = c.holomorphic_sectional_curvature(&z, &[Complex64::new(0.7, -1.1), Complex64::new(2.0, 0.3)]).unwrap();
    let r: f64 = z.iter().map(|x| x.norm_sqr()).sum();
    assert!((a - b).abs() < 1e-10);
    assert!((a + 1.0 / (1.0 - r)).abs() < 1e-10);
}

#[test]
fn half_hyperbolic_weight_fields() {
    for n in 1..=3 {
        let f = make_family(&FamilySpec::new("half_hyperbolic", n)).unwrap();
        let alpha = -3i64;
        let w = make_weight(&f, &WeightSpec::LogBall { a: "0".into(), b: alpha.to_string() }).unwrap();
        let x = gradient_field(&f.metric, &w);
        assert!(fields_equal(&x, &euler_field(n, &WRational::from_int(n, -alpha))));
        let y = gradient_minus_torsion(&f.metric, &w);
        assert!(fields_equal(&y, &euler_field(n, &WRational::from_int(n, n as i64 - 1 - alpha))));
        let ts = torsion_sharp(&f.metric);
        assert!(fields_equal(&ts, &euler_field(n, &WRational::from_int(n, -(n as i64 - 1)))));
    }
}

#[test]
fn c2_metric_and_determinant() {
    let f = make_family(&FamilySpec::new("c2_example", 2)).unwrap();
    let (r1, r2) = (WRational::r_k(2, 0), WRational::r_k(2, 1));
    let one = WRational::one(2);
    let h = f.metric.base();
    assert!(h[0][0].equals(&r1.add(&r2).add(&one)));
    assert!(h[0][1].equals(&WRational::zbar(2, 0).mul(&WRational::z(2, 1))));
    assert!(h[1][0].equals(&WRational::z(2, 0).mul(&WRational::zbar(2, 1))));
    assert!(h[1][1].equals(&r1.add(&one)));
    let det = r1.mul(&r1).add(&r1.scale_int(2)).add(&r2).add(&one);
    assert!(f.metric.det().equals(&rat(det)));
}

#[test]
fn hopf_metric_is_four_delta_over_r() {
    let f = make_family(&FamilySpec::new("hopf", 2)).unwrap();
    let d = WRational::r(2).inv().unwrap().scale_int(4);
    for j in 0..2 {
        for k in 0..2 {
            let want = if j == k { d.clone() } else { WRational::zero(2) };
            assert!(f.metric.entry(j, k).equals(&rat(want)));
        }
    }
    assert!(ChernConnection::new(&f.metric).has_holomorphic_torsion());
}

#[test]
fn beta_half_uses_a_fractional_scale() {
    let f = make_family(&FamilySpec::new("beta_family", 2).with("beta", json!("1/2"))).unwrap();
    assert!(!f.metric.is_rational());
    let c = ChernConnection::new(&f.metric);
    let tau = c.torsion_form();
    let want = WRational::zbar(2, 0).mul(&one_minus_r(2).inv().unwrap()).scale(&GaussRat::from_ratio(-1, 2));
    assert!(tau[0].equals(&want));
    assert!(!c.has_holomorphic_torsion());
}

#[test]
fn every_sample_family_satisfies_the_structural_identities() {
    for spec in sample_specs() {
        let f = make_family(&spec).unwrap();
        let g = &f.metric;
        let n = g.dim();
        assert!(g.inverse_is_exact(), "{}", spec.family);
        assert!(g.is_hermitian(), "{}", spec.family);
        let c = ChernConnection::new(g);
        let t = c.torsion();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!(t[i][j][k].equals(&t[i][k][j].neg()), "{}", spec.family);
                }
            }
        }
        let rt = c.raised_torsion();
        for p in 0..n {
            for r in 0..n {
                for s in 0..n {
                    assert!(rt[p][r][s].equals(&rt[p][s][r].neg()), "{}", spec.family);
                }
            }
        }
        if let Some(pair) = &f.conformal {
            assert!(pair.tripod().agrees(), "{}", spec.family);
            assert!(pair.conformal_law_holds().unwrap(), "{}", spec.family);
        }
        if f.potential.is_some() && f.conformal.is_none() {
            assert!(c.torsion_form().iter().all(|x| x.is_identically_zero()), "{}", spec.family);
        }
    }
}
