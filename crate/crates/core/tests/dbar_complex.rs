use holotorsion::dbar::*;
use holotorsion::field::{rat_to_f64, GaussRat};
use holotorsion::Error;
use num_rational::BigRational;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn form(n: usize, s: &str) -> MonomialForm {
    MonomialForm::parse(n, s).unwrap()
}

fn aff(c: i64, a: i64) -> Affine {
    Affine::from_ints(c, a)
}

#[test]
fn dbar_examples() {
    let f = MonomialForm::function(MultiIndex(vec![2, 0]), GaussRat::one());
    assert_eq!(f.dbar().unwrap(), form(2, "2*z1*dz1"));
    let d = form(2, "z2*dz1").dbar().unwrap();
    assert_eq!(d.two_coefficient(&MultiIndex(vec![0, 0]), 0, 1), GaussRat::from_int(-1));
    assert!(form(2, "z1*dz1 + z2*dz2").dbar().unwrap().is_zero());
    assert!(d.dbar().is_err());
}

#[test]
fn adjoint_examples() {
    assert_eq!(dbar_star_1(&form(2, "dz1"), &q(-1, 1)).unwrap().to_string(), "2*z1");
    assert!(dbar_star_1(&form(2, "z2*dz1 - z1*dz2"), &q(-1, 1)).unwrap().is_zero());
    assert_eq!(dbar_star_1(&form(3, "z1*dz1"), &q(-2, 1)).unwrap().to_string(), "4*z1^2");
    let v = form(2, "dz1^dz2");
    assert_eq!(dbar_star_2(&v, &q(-1, 1)).unwrap(), form(2, "-z2*dz1 + z1*dz2"));
    assert!(dbar_star_2(&MonomialForm::zero(2, 2), &q(-1, 1)).unwrap().is_zero());
    // the coefficient n-alpha-2 vanishes only at the excluded alpha = 0 for n = 2
    assert!(dbar_star_2(&v, &q(0, 1)).is_err());
    assert!(dbar_star_1(&form(2, "dz1"), &q(1, 1)).is_err());
    assert!(dbar_star_1(&form(2, "dz1"), &q(0, 1)).is_err());
}

#[test]
fn laplacian_examples() {
    for n in 1..=3 {
        let alpha = q(-3, 2);
        for k in 0..n {
            let u = MonomialForm::one_form(MultiIndex::zero(n), k, GaussRat::one());
            let want = u.scale_rational(&(q(n as i64 - 1, 1) - &alpha));
            assert_eq!(box1_apply(&u, &alpha).unwrap(), want);
        }
    }
    // z^k dz -> -(k+1) alpha z^k dz
    for k in 0..6u32 {
        let u = MonomialForm::one_form(MultiIndex(vec![k]), 0, GaussRat::one());
        let want = u.scale_rational(&(q(-(k as i64 + 1), 1) * q(-5, 3)));
        assert_eq!(box1_apply(&u, &q(-5, 3)).unwrap(), want);
    }
    // the monomial formula against the operator
    let alpha = q(-1, 2);
    let lam = MultiIndex(vec![2, 1, 1]);
    let mut want = MonomialForm::zero(3, 1);
    for (t, j, c) in box1_monomial(&lam, 1, &alpha) {
        want.add_term(t, FormIndex::One(j), GaussRat::real(c));
    }
    let u = MonomialForm::one_form(lam, 1, GaussRat::one());
    assert_eq!(box1_apply(&u, &alpha).unwrap(), want);
    assert_eq!(box1_composed(&u, &alpha).unwrap(), want);
}

#[test]
fn displayed_six_by_six() {
    let m = box1_matrix_symbolic(2, 2).unwrap().dense_symbolic();
    let z = aff(0, 0);
    let d3 = aff(3, -3);
    let want = vec![
        vec![d3.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), aff(1, -3), aff(1, 0), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), aff(2, 0), aff(2, -3), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), aff(2, -3), aff(2, 0), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), aff(1, 0), aff(1, -3), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), d3],
    ];
    assert_eq!(m, want);
}

fn clusters(n: usize, alpha: &BigRational, m: u32) -> Vec<(f64, usize)> {
    let b = box1_matrix_symbolic(n, m).unwrap();
    spectrum(&b, alpha).unwrap().into_iter().map(|c| (c.value, c.multiplicity)).collect()
}

fn same(got: &[(f64, usize)], want: &[(f64, usize)]) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| g.1 == w.1 && approx_eq(g.0, w.0))
}

#[test]
fn displayed_spectra() {
    for a in [q(-1, 2), q(-1, 1), q(-3, 1)] {
        let x = rat_to_f64(&a);
        let mut w1 = vec![(-2.0 * x, 1), (2.0 * (1.0 - x), 3)];
        w1.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert!(same(&clusters(2, &a, 1), &w1), "alpha = {a}");
        let mut w2 = vec![(3.0 * (1.0 - x), 4), (-3.0 * x, 2)];
        w2.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert!(same(&clusters(2, &a, 2), &w2), "alpha = {a}");
        assert!(same(&clusters(2, &a, 0), &[(1.0 - x, 2)]));
    }
}

#[test]
fn blockwise_and_dense_spectra_agree() {
    for (n, m) in [(2, 4), (3, 3), (4, 2)] {
        let b = box1_matrix_symbolic(n, m).unwrap();
        let a = q(-7, 3);
        assert_eq!(spectrum(&b, &a).unwrap().len(), spectrum_dense(&b, &a).unwrap().len());
        for (x, y) in spectrum(&b, &a).unwrap().iter().zip(spectrum_dense(&b, &a).unwrap()) {
            assert_eq!(x.multiplicity, y.multiplicity);
            assert!(approx_eq(x.value, y.value));
        }
    }
}

#[test]
fn gershgorin_rows() {
    let alpha = q(-3, 2);
    for (n, m) in [(2, 3), (3, 2), (4, 3)] {
        let b = box1_matrix_symbolic(n, m).unwrap();
        let g = b.gershgorin(&alpha).unwrap();
        for (row, (lam, l)) in g.rows.iter().zip(b.basis.elements()) {
            assert!(row.off_row_sum_matches);
            let mp1 = q(m as i64 + 1, 1);
            if lam.get(*l) == m {
                assert_eq!(row.q, 0);
                assert_eq!(row.delta, &mp1 * (q(n as i64 - 1, 1) - &alpha));
            }
            if m >= 1 && lam.get(*l) == m - 1 {
                assert_eq!(row.delta, &mp1 * (q(n as i64 - 2, 1) - &alpha));
            }
        }
        let r = report_for(&b, &alpha, false).unwrap();
        assert!(r.consistent());
    }
}

#[test]
fn nu_examples() {
    assert_eq!(nu_formula(1, &q(-2, 1)).unwrap(), q(2, 1));
    assert_eq!(nu_formula(2, &q(-1, 2)).unwrap(), q(1, 1));
    assert_eq!(nu_formula(4, &q(-1, 1)).unwrap(), q(4, 1));
    assert!(nu_formula(2, &q(0, 1)).is_err());
}

#[test]
fn scan_examples() {
    let s = first_eigenvalue_scan(2, &q(-1, 2), 8).unwrap();
    assert!(s.result.pass);
    assert_eq!(s.result.multiplicity, 1);
    assert_eq!(s.eigenforms, vec![form(2, "-z2*dz1 + z1*dz2")]);

    let s = first_eigenvalue_scan(2, &q(-1, 1), 8).unwrap();
    assert!(s.result.pass && approx_eq(s.result.lambda1, 2.0));
    assert_eq!(s.result.multiplicity, 3);
    let mut got = s.eigenforms.clone();
    got.sort_by_key(|f| f.to_string());
    let mut want = vec![form(2, "dz1"), form(2, "dz2"), form(2, "-z2*dz1 + z1*dz2")];
    want.sort_by_key(|f| f.to_string());
    assert_eq!(got, want);

    let s = first_eigenvalue_scan(3, &q(-1, 1), 8).unwrap();
    assert!(s.result.pass && approx_eq(s.result.lambda1, 3.0));
    assert_eq!(s.result.multiplicity, 3);
    assert!(s.eigenforms.iter().all(|f| f.max_degree() == Some(0)));

    assert!(first_eigenvalue_scan(2, &q(-1, 1), 1).is_err());
}

#[test]
fn canonical_solution_examples() {
    for n in 1..=3 {
        let s = canonical_solution(&form(n, "dz1"), &q(-1, 1)).unwrap();
        assert_eq!(s.f, MonomialForm::function(MultiIndex::unit(n, 0), GaussRat::one()));
        assert!(s.exact);
        let z = canonical_solution(&MonomialForm::zero(n, 1), &q(-1, 1)).unwrap();
        assert!(z.f.is_zero());
    }
    let eta = form(2, "2*z1*dz1");
    let s = canonical_solution(&eta, &q(-1, 2)).unwrap();
    assert_eq!(s.f.dbar().unwrap(), eta);
    assert_eq!(s.f, form(2, "z1^2"));
}

#[test]
fn non_closed_right_hand_side_is_rejected() {
    let err = canonical_solution(&form(2, "z2*dz1"), &q(-1, 1)).unwrap_err();
    match err {
        Error::NotClosedForm(msg) => assert!(msg.contains("_12"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn c2_laplacian_and_spectrum() {
    assert_eq!(c2_box_apply(&form(2, "dz1")).unwrap(), form(2, "dz1"));
    for k in 0..6u32 {
        for l in 0..4u32 {
            assert_eq!(c2_eigenvalue(k, l, 0).unwrap(), Some(k + 1));
            assert_eq!(c2_eigenvalue(k, l, 1).unwrap(), Some(k));
        }
    }
    let rows = c2_spectrum(10).unwrap();
    assert_eq!(rows.len(), 9);
    let mult = |v: u32| rows.iter().find(|r| r.value == v).unwrap().multiplicity;
    assert_eq!((mult(2), mult(5), mult(10)), (1, 7, 17));
    assert!(rows.iter().all(|r| r.multiplicity == r.expected));
    assert!(c2_spectrum(1).is_err());
}
