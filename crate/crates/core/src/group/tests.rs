use super::*;
use crate::linalg::rational::{int, rat};

fn v(xs: &[(i64, i64)]) -> RationalVector {
    RationalVector::from_pairs(xs)
}

fn vi(xs: &[i64]) -> RationalVector {
    RationalVector::from_ints(xs)
}

fn gen(xs: &[i64], ps: &[u64]) -> Generator {
    Generator::new(vi(xs), PrimeSet::of(ps).unwrap())
}

fn g1() -> GroupRep {
    GroupRep::new(2, vec![gen(&[1, 0], &[]), Generator::new(vi(&[0, 1]), PrimeSet::All)]).unwrap()
}

fn g2() -> GroupRep {
    GroupRep::new(2, vec![gen(&[1, 0], &[2]), gen(&[0, 1], &[3]), gen(&[1, 1], &[5])]).unwrap()
}

fn g3() -> GroupRep {
    GroupRep::new(
        2,
        vec![
            gen(&[1, 0], &[3]),
            gen(&[0, 1], &[5]),
            Generator::plain(v(&[(1, 2), (1, 2)])),
        ],
    )
    .unwrap()
}

fn a3() -> GroupRep {
    GroupRep::new(2, vec![gen(&[1, 0], &[3]), gen(&[0, 1], &[5])]).unwrap()
}

#[test]
fn membership_in_g1() {
    let g = g1();
    assert!(g.member(&v(&[(3, 1), (7, 11)])).unwrap());
    assert!(!g.member(&v(&[(1, 2), (0, 1)])).unwrap());
    assert!(g.member(&RationalVector::zeros(2)).unwrap());
    assert!(g.member(&vi(&[1])).is_err());
}

#[test]
fn membership_in_g2() {
    let g = g2();
    // (1/2, 0) + (0, 1/3) + (1/5)(1, 1)
    let x = &v(&[(1, 2), (0, 1)]) + &v(&[(0, 1), (1, 3)]);
    let x = &x + &v(&[(1, 5), (1, 5)]);
    assert!(g.member(&x).unwrap());
    assert!(!g.member(&v(&[(1, 3), (0, 1)])).unwrap());
    assert!(!g.member(&v(&[(1, 5), (0, 1)])).unwrap());
    assert!(g.member(&v(&[(1, 25), (1, 25)])).unwrap());
}

#[test]
fn membership_in_g3() {
    let g = g3();
    assert!(g.member(&v(&[(1, 2), (1, 2)])).unwrap());
    assert!(!g.member(&v(&[(1, 2), (0, 1)])).unwrap());
    assert!(g.member(&v(&[(1, 6), (1, 2)])).unwrap());
    assert!(!g.member(&v(&[(1, 4), (1, 4)])).unwrap());
}

#[test]
fn element_types() {
    let g = g1();
    assert_eq!(g.element_type(&vi(&[0, 1])).unwrap(), DivisibilityType::rationals());
    assert_eq!(g.element_type(&vi(&[2, 5])).unwrap().to_string(), "1/2 Z");
    let g = g2();
    assert_eq!(g.element_type(&vi(&[1, 0])).unwrap().to_string(), "Z[2]");
    assert_eq!(g.element_type(&vi(&[3, 3])).unwrap().to_string(), "1/3 Z[5]");
    assert_eq!(g.element_type(&vi(&[1, 3])).unwrap().to_string(), "Z");
    let g = g3();
    assert_eq!(g.element_type(&vi(&[1, 1])).unwrap().to_string(), "1/2 Z");
    assert!(g.element_type(&v(&[(1, 4), (0, 1)])).is_err());
}

#[test]
fn comparison() {
    assert_eq!(a3().compare(&g3()).unwrap(), Comparison::LeftInRight);
    assert_eq!(g3().compare(&a3()).unwrap(), Comparison::RightInLeft);
    assert_eq!(g3().compare(&g3().simplified()).unwrap(), Comparison::Equal);
    let z2 = GroupRep::free(2, &[vi(&[1, 0]), vi(&[0, 1])]).unwrap();
    assert_eq!(z2.compare(&g2()).unwrap(), Comparison::LeftInRight);
    assert_eq!(g1().compare(&g2()).unwrap(), Comparison::Incomparable);
}

#[test]
fn purification() {
    let g = g2();
    let line = g.purify(&Subspace::span(2, &[vi(&[1, 1])])).unwrap();
    assert_eq!(line.generators().len(), 1);
    assert_eq!(line.generators()[0], gen(&[1, 1], &[5]));
    let g = g3();
    let line = g.purify(&Subspace::span(2, &[vi(&[1, 1])])).unwrap();
    assert_eq!(line.generators()[0], Generator::plain(v(&[(1, 2), (1, 2)])));
    let x = g.purify(&Subspace::span(2, &[vi(&[1, 0])])).unwrap();
    assert_eq!(x.generators()[0], gen(&[1, 0], &[3]));
    assert!(g.purify(&Subspace::full(2)).unwrap().equals(&g));
    assert_eq!(g.purify(&Subspace::zero(2)).unwrap().rank(), 0);
}

#[test]
fn divisible_parts() {
    let g = g1();
    let d = g.divisible_part(PrimeClass::All);
    assert_eq!(d.generators(), &[Generator::new(vi(&[0, 1]), PrimeSet::All)]);
    let d = g2().divisible_part(PrimeClass::Prime(3));
    assert_eq!(d.generators(), &[gen(&[0, 1], &[3])]);
    assert_eq!(g2().divisible_part(PrimeClass::Prime(7)).rank(), 0);
}

#[test]
fn quotient_g3_a3() {
    let q = g3().index_and_quotient(&a3()).unwrap();
    let f = q.finite().unwrap();
    assert_eq!(f.invariant_factors, vec![BigInt::from(2)]);
    assert_eq!(f.order(), BigInt::from(2));
    let img = f.image(&v(&[(1, 2), (1, 2)])).unwrap();
    assert_eq!(img, vec![BigInt::from(1)]);
    assert_eq!(f.image(&vi(&[1, 0])).unwrap(), vec![BigInt::zero()]);
}

#[test]
fn quotient_z2() {
    let z2 = GroupRep::free(2, &[vi(&[1, 0]), vi(&[0, 1])]).unwrap();
    let a = GroupRep::free(2, &[vi(&[2, 0]), vi(&[0, 3])]).unwrap();
    let q = z2.index_and_quotient(&a).unwrap();
    assert_eq!(q.finite().unwrap().invariant_factors, vec![BigInt::from(6)]);
    let a = GroupRep::free(2, &[vi(&[2, 0]), vi(&[0, 2])]).unwrap();
    let q = z2.index_and_quotient(&a).unwrap();
    assert_eq!(q.finite().unwrap().invariant_factors, vec![BigInt::from(2), BigInt::from(2)]);
}

#[test]
fn infinite_quotient() {
    let z = GroupRep::free(1, &[vi(&[1])]).unwrap();
    let z2loc = GroupRep::new(1, vec![gen(&[1], &[2])]).unwrap();
    match z2loc.index_and_quotient(&z).unwrap() {
        QuotientDescription::InfiniteTorsion(w) => {
            assert_eq!(w.prime, 2);
            assert!(z2loc.member(&w.direction).unwrap());
        }
        other => panic!("expected infinite quotient, got {other:?}"),
    }
    let q = GroupRep::new(1, vec![Generator::new(vi(&[1]), PrimeSet::All)]).unwrap();
    match q.index_and_quotient(&z2loc).unwrap() {
        QuotientDescription::InfiniteTorsion(w) => assert_eq!(w.prime, 3),
        other => panic!("expected infinite quotient, got {other:?}"),
    }
    assert_eq!(z.index_and_quotient(&z2loc).unwrap_err(), Error::NotSubgroup);
}

#[test]
fn quotient_with_local_prime() {
    // Z[1/2] / 3·Z[1/2] has order 3; 2-part trivial
    let g = GroupRep::new(1, vec![gen(&[1], &[2])]).unwrap();
    let a = GroupRep::new(1, vec![gen(&[3], &[2])]).unwrap();
    let f = g.index_and_quotient(&a).unwrap();
    assert_eq!(f.index(), Some(BigInt::from(3)));
    // Z[1/2]·(1/4) has the same elements as Z[1/2]
    let b = GroupRep::new(1, vec![Generator::new(v(&[(1, 4)]), PrimeSet::single(2))]).unwrap();
    assert_eq!(g.compare(&b).unwrap(), Comparison::Equal);
}

#[test]
fn order_modulo_group() {
    let g = g3();
    assert_eq!(g.order_modulo(&v(&[(1, 4), (1, 4)])), Some(BigInt::from(2)));
    assert_eq!(g.order_modulo(&v(&[(1, 9), (0, 1)])), Some(BigInt::one()));
    assert_eq!(g.order_modulo(&v(&[(1, 2), (0, 1)])), Some(BigInt::from(2)));
}

#[test]
fn scaling_and_transform() {
    let g = g3();
    let h = g.scale(&int(2)).unwrap();
    assert!(h.member(&vi(&[1, 1])).unwrap());
    assert!(g.scale(&rat(0, 1)).is_err());
    let swap = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let s = g.transform(&swap).unwrap();
    assert!(s.member(&v(&[(1, 25), (0, 1)])).unwrap());
    assert!(!s.member(&v(&[(1, 3), (0, 1)])).unwrap());
}

#[test]
fn direct_sums() {
    let z = GroupRep::free(1, &[vi(&[1])]).unwrap();
    let q = GroupRep::new(1, vec![Generator::new(vi(&[1]), PrimeSet::All)]).unwrap();
    assert!(z.direct_sum(&q).equals(&g1()));
}

#[test]
fn rank_one_normal_form() {
    let g = GroupRep::new(1, vec![Generator::new(v(&[(6, 5)]), PrimeSet::single(2))]).unwrap();
    let s = g.simplified();
    assert_eq!(s.generators()[0].vector, v(&[(3, 5)]));
    assert!(s.equals(&g));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_group() -> impl Strategy<Value = GroupRep> {
        let tag = prop_oneof![
            4 => Just(PrimeSet::empty()),
            2 => prop::sample::select(vec![2u64, 3, 5]).prop_map(PrimeSet::single),
            1 => Just(PrimeSet::All),
        ];
        let g = (prop::collection::vec(-4i64..=4, 2), 1i64..=6, tag);
        prop::collection::vec(g, 1..=4).prop_map(|gs| {
            let gens = gs
                .into_iter()
                .filter(|(xs, _, _)| xs.iter().any(|&x| x != 0))
                .map(|(xs, d, t)| {
                    let v = RationalVector::new(xs.iter().map(|&x| rat(x, d)).collect());
                    Generator::new(v, t)
                })
                .collect();
            GroupRep::new(2, gens).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn generators_are_members(g in small_group()) {
            for gen in g.generators() {
                prop_assert!(g.member(&gen.vector).unwrap());
            }
        }

        #[test]
        fn closed_under_sums(g in small_group(), i in 0usize..4, j in 0usize..4, a in -3i64..=3, b in -3i64..=3) {
            let n = g.generators().len();
            if n > 0 {
                let x = g.generators()[i % n].vector.scale(&int(a));
                let y = g.generators()[j % n].vector.scale(&int(b));
                prop_assert!(g.member(&(&x + &y)).unwrap());
            }
        }

        #[test]
        fn simplification_preserves_group(g in small_group()) {
            prop_assert!(g.simplified().equals(&g));
        }

        #[test]
        fn purification_is_pure(g in small_group(), xs in prop::collection::vec(-3i64..=3, 2)) {
            let u = Subspace::span(2, &[RationalVector::from_ints(&xs)]);
            let p = g.purify(&u).unwrap();
            prop_assert!(p.is_subgroup_of(&g));
            for k in 1..=6i64 {
                for gen in g.generators() {
                    let x = gen.vector.scale(&rat(1, k));
                    if g.member(&x).unwrap() && u.contains(&x) {
                        prop_assert!(p.member(&x).unwrap());
                    }
                }
            }
        }

        #[test]
        fn element_type_contains_exactly_multipliers(g in small_group(), num in -6i64..=6, den in 1i64..=8) {
            if let Some(gen) = g.generators().first() {
                let a = gen.vector.clone();
                let ty = g.element_type(&a).unwrap();
                let r = rat(num, den);
                prop_assert_eq!(ty.contains(&r), g.member(&a.scale(&r)).unwrap());
            }
        }
    }
}
