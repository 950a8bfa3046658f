use holotorsion::bergman::gram_entries;
use holotorsion::dbar::{box1_apply, box1_composed, box1_matrix_symbolic, FormIndex, MonomialForm, MultiIndex};
use holotorsion::field::{GaussRat, Slot, WPoly, WRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn alpha_of(i: usize) -> BigRational {
    [BigRational::new((-1).into(), 2.into()), BigRational::from_integer((-1).into()), BigRational::from_integer((-3).into())][i].clone()
}

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-5i64..=5, -5i64..=5, 1i64..=3).prop_map(|(a, b, d)| {
        GaussRat::new(BigRational::new(a.into(), d.into()), BigRational::new(b.into(), d.into()))
    })
}

fn wpoly(n: usize) -> impl Strategy<Value = WPoly> {
    prop::collection::vec((prop::collection::vec(0u16..=3, 2 * n), gauss()), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(WPoly::zero(n), |acc, (e, c)| acc.add(&WPoly::monomial(n, e, c)))
    })
}

/// A polynomial over `1 - |z|^2`, so derivatives go through the quotient rule.
fn field(n: usize) -> impl Strategy<Value = WRational> {
    (wpoly(n), 0u8..=2).prop_map(move |(p, k)| {
        let num = WRational::from_poly(p);
        let mut den = WRational::one(n);
        for _ in 0..k {
            den = den.mul(&WRational::one(n).sub(&WRational::r(n)));
        }
        num.div(&den).unwrap()
    })
}

fn one_form(n: usize, max_deg: u32) -> impl Strategy<Value = MonomialForm> {
    prop::collection::vec((prop::collection::vec(0u32..=max_deg, n), 0..n, gauss()), 1..6).prop_map(move |terms| {
        let mut u = MonomialForm::zero(n, 1);
        for (lam, l, c) in terms {
            let mut lam = lam;
            // keep the total degree bounded
            while lam.iter().sum::<u32>() > max_deg {
                let j = lam.iter().position(|&x| x > 0).unwrap();
                lam[j] -= 1;
            }
            u.add_term(MultiIndex(lam), FormIndex::One(l), c);
        }
        u
    })
}

fn function(n: usize, max_deg: u32) -> impl Strategy<Value = MonomialForm> {
    prop::collection::vec((prop::collection::vec(0u32..=max_deg, n), gauss()), 1..6).prop_map(move |terms| {
        let mut f = MonomialForm::zero(n, 0);
        for (lam, c) in terms {
            f = f.add(&MonomialForm::function(MultiIndex(lam), c));
        }
        f
    })
}

fn slots(n: usize) -> Vec<Slot> {
    (0..n).flat_map(|k| [Slot::Holo(k), Slot::Anti(k)]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mixed_partials_commute(f in (1usize..=3).prop_flat_map(field), a in 0usize..6, b in 0usize..6) {
        let n = f.nvars();
        let s = slots(n);
        let (x, y) = (s[a % (2 * n)], s[b % (2 * n)]);
        prop_assert!(f.wirtinger(x).wirtinger(y).equals(&f.wirtinger(y).wirtinger(x)));
    }

    #[test]
    fn conjugation_is_an_involution_and_swaps_derivatives(f in (1usize..=3).prop_flat_map(field), k in 0usize..3) {
        let n = f.nvars();
        let k = k % n;
        prop_assert!(f.conj().conj().equals(&f));
        prop_assert!(f.d(k).conj().equals(&f.conj().dbar(k)));
    }

    #[test]
    fn d_squared_vanishes(f in (1usize..=4).prop_flat_map(|n| function(n, 5))) {
        let dd = f.dbar().unwrap().dbar().unwrap();
        prop_assert!(dd.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laplacian_formula_matches_the_composition(u in (1usize..=3).prop_flat_map(|n| one_form(n, 6)), ai in 0usize..3) {
        let a = alpha_of(ai);
        prop_assert_eq!(box1_apply(&u, &a).unwrap(), box1_composed(&u, &a).unwrap());
    }

    #[test]
    fn graded_pieces_are_invariant(u in (1usize..=3).prop_flat_map(|n| one_form(n, 6)), ai in 0usize..3) {
        let a = alpha_of(ai);
        for m in u.degrees() {
            let image = box1_apply(&u.homogeneous_part(m), &a).unwrap();
            prop_assert!(image.degrees().iter().all(|&d| d == m));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn column_sums_are_constant(n in 1usize..=4, m in 0u32..=6, p in -12i64..=-1, q in 1i64..=4) {
        let a = BigRational::new(p.into(), q.into());
        let b = box1_matrix_symbolic(n, m).unwrap();
        let want = BigRational::from_integer(BigInt::from(m + 1)) * (BigRational::from_integer(BigInt::from(n as i64 - 1)) - &a);
        prop_assert!(b.column_sums(&a).iter().all(|s| *s == want));
    }

    #[test]
    fn laplacian_is_self_adjoint_for_the_weighted_pairing(n in 1usize..=3, m in 0u32..=6, ai in 0usize..3) {
        let a = alpha_of(ai);
        let b = box1_matrix_symbolic(n, m).unwrap();
        let dense = b.dense(&a);
        let c = -a - BigRational::from_integer(1.into());
        for block in b.blocks() {
            let g = gram_entries(&b.basis, &block, &c).unwrap();
            let k = block.len();
            let mut ga = vec![vec![BigRational::zero(); k]; k];
            for i in 0..k {
                for j in 0..k {
                    for (t, &bt) in block.iter().enumerate() {
                        ga[i][j] += &g[i][t] * &dense[bt][block[j]];
                    }
                }
            }
            for i in 0..k {
                for j in 0..k {
                    prop_assert_eq!(&ga[i][j], &ga[j][i]);
                }
            }
            // nothing leaks out of the block
            for &col in &block {
                for (row, x) in dense.iter().enumerate() {
                    if !x[col].is_zero() {
                        prop_assert!(block.contains(&row));
                    }
                }
            }
        }
    }
}
