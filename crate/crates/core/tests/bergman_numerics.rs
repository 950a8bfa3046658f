use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use holotorsion::bergman::*;
use holotorsion::dbar::{multi_indices, MonomialForm, MultiIndex};
use num_rational::BigRational;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// Stick-breaking in squared radii with `s = 1 - v^2` on every axis, Gauss-Legendre in `v`.
fn legendre_oracle(lam: &MultiIndex, c: f64) -> f64 {
    let n = lam.dim();
    let rule = GaussLegendre::new(40).unwrap();
    let pts: Vec<(f64, f64)> = rule.as_node_weight_pairs().iter().map(|&(x, w)| ((x + 1.0) / 2.0, w / 2.0)).collect();
    fn rec(j: usize, lam: &MultiIndex, c: f64, rest: f64, pts: &[(f64, f64)]) -> f64 {
        let n = lam.dim();
        if j == n {
            return rest.powf(c);
        }
        let mut total = 0.0;
        for &(v, w) in pts {
            let s = 1.0 - v * v;
            let t = rest * s;
            // dt = rest ds, ds = 2v dv
            total += w * 2.0 * v * rest * t.powi(lam.get(j) as i32) * rec(j + 1, lam, c, rest * (1.0 - s), pts);
        }
        total
    }
    PI.powi(n as i32) * rec(0, lam, c, 1.0, &pts)
}

#[test]
fn closed_form_matches_both_quadratures() {
    for n in 1..=3 {
        for m in 0..=4 {
            for lam in multi_indices(n, m) {
                for c in [0.0, 0.5, 1.0, 2.0] {
                    let exact = monomial_integral(&lam, &lam, c, n).unwrap();
                    let jac = quadrature_pairing(&lam, &lam, c).unwrap();
                    let leg = legendre_oracle(&lam, c);
                    assert!((jac.re - exact).abs() <= 1e-9 * exact && jac.im.abs() <= 1e-12 * exact, "{lam} c={c}");
                    assert!((leg - exact).abs() <= 1e-9 * exact, "{lam} c={c}: {leg} vs {exact}");
                }
            }
        }
    }
}

#[test]
fn spec_example_integral() {
    let lam = MultiIndex(vec![2, 1]);
    let exact = monomial_integral(&lam, &lam, 1.0, 2).unwrap();
    // pi^2 * 2! * 1! * Γ(2) / Γ(7)
    assert!((exact - PI * PI * 2.0 / 720.0).abs() < 1e-15);
    assert!((quadrature_pairing(&lam, &lam, 1.0).unwrap().re - exact).abs() < 1e-9 * exact);
}

#[test]
fn distinct_monomials_are_orthogonal_under_quadrature() {
    for n in 1..=3 {
        let idx: Vec<MultiIndex> = (0..=4).flat_map(|m| multi_indices(n, m)).collect();
        for a in &idx {
            for b in &idx {
                if a != b {
                    assert_eq!(monomial_integral(a, b, 0.5, n).unwrap(), 0.0);
                    let v = quadrature_pairing(a, b, 0.5).unwrap();
                    assert!(v.norm() < 1e-10, "{a} {b}: {v}");
                }
            }
        }
    }
}

#[test]
fn gram_blocks_are_symmetric_and_positive() {
    for n in 1..=3 {
        for m in 0..=3 {
            for a in [q(-1, 2), q(-1, 1), q(-3, 1)] {
                let g = gram_block(n, &a, m).unwrap();
                assert!(g.is_symmetric() && g.is_positive_definite(), "n={n} m={m} alpha={a}");
            }
        }
    }
}

#[test]
fn one_dimensional_ground_entry_matches_quadrature() {
    let a = q(-5, 2);
    let g = gram_block(1, &a, 0).unwrap().values()[0][0];
    let z = MultiIndex(vec![0]);
    let want = quadrature_pairing(&z, &z, 2.5).unwrap().re;
    assert!((g - want).abs() < 1e-9 * want);
}

#[test]
fn adjointness_on_random_pairs() {
    for n in 1..=3 {
        for a in [q(-1, 2), q(-1, 1), q(-3, 1)] {
            let r = adjointness_sweep(n, &a, 50, 7).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.nontrivial > 10, "{r:?}");
        }
    }
}

fn etas(n: usize) -> Vec<&'static str> {
    let mut v = vec!["dz1", "2*z1*dz1", "z1^2*dz1"];
    if n >= 2 {
        v.push("z2*dz1 + z1*dz2");
        v.push("z1*z2*dz1 + 1/2*z1^2*dz2");
    }
    v
}

#[test]
fn estimate_holds_on_closed_forms() {
    for n in 1..=3 {
        for a in [q(-1, 2), q(-1, 1), q(-3, 1)] {
            for text in etas(n) {
                let eta = MonomialForm::parse(n, text).unwrap();
                let r = estimate_check(&eta, &a).unwrap();
                assert!(r.pass(), "{text} n={n} alpha={a}: {r:?}");
            }
        }
    }
}

#[test]
fn c2_membership_matches_norm_finiteness() {
    for k in 0..=8 {
        for l in 0..=8 {
            assert_eq!(c2_membership(k, l), c2_norm(k, l).unwrap().is_finite(), "({k}, {l})");
        }
    }
}

/// `π^2 ∫ s^k e^{-s^2/2-s} [A l!/s^{l+1} + (l+1)!/s^{l+2}] ds` with `A = (s+1)^2`,
/// the `t` integral done by hand, composite Simpson in `s`.
fn c2_oracle(k: i32, l: i32) -> f64 {
    let fact = |x: i32| (1..=x).fold(1.0, |a, i| a * i as f64);
    let f = |s: f64| {
        if s == 0.0 {
            return if k - l - 2 == 0 { fact(l + 1) } else { 0.0 };
        }
        let a = (s + 1.0) * (s + 1.0);
        s.powi(k) * (-s * s / 2.0 - s).exp() * (a * fact(l) / s.powi(l + 1) + fact(l + 1) / s.powi(l + 2))
    };
    let (top, steps) = (30.0, 60_000);
    let h = top / steps as f64;
    let mut sum = f(0.0) + f(top);
    for i in 1..steps {
        sum += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    PI * PI * sum * h / 3.0
}

#[test]
fn c2_norm_matches_the_hand_integral() {
    for (k, l) in [(2, 0), (3, 1), (3, 0), (5, 2), (6, 1)] {
        let v = c2_norm(k, l).unwrap().value().unwrap();
        let o = c2_oracle(k as i32, l as i32);
        assert!((v - o).abs() < 1e-6 * o, "({k}, {l}): {v} vs {o}");
    }
}

#[test]
fn weighted_symmetry_examples() {
    for (n, a, m) in [(2, q(-1, 1), 1), (2, q(-1, 2), 2), (3, q(-2, 1), 3)] {
        let r = weighted_symmetry_check(n, &a, m).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
