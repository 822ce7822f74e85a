use super::*;
use crate::group::Generator;

fn vi(xs: &[i64]) -> RationalVector {
    RationalVector::from_ints(xs)
}

fn loc(v: &[i64], p: &[u64]) -> Generator {
    Generator::new(vi(v), PrimeSet::of(p).unwrap())
}

fn grp(n: usize, gens: Vec<Generator>) -> GroupRep {
    GroupRep::new(n, gens).unwrap()
}

fn free(vs: &[&[i64]]) -> GroupRep {
    let vs: Vec<RationalVector> = vs.iter().map(|v| vi(v)).collect();
    GroupRep::free(vs[0].dim(), &vs).unwrap()
}

fn g1() -> GroupRep {
    grp(2, vec![Generator::plain(vi(&[1, 0])), Generator::new(vi(&[0, 1]), PrimeSet::All)])
}

fn g2() -> GroupRep {
    grp(2, vec![loc(&[1, 0], &[2]), loc(&[0, 1], &[3]), loc(&[1, 1], &[5])])
}

fn g3() -> GroupRep {
    grp(
        2,
        vec![loc(&[1, 0], &[3]), loc(&[0, 1], &[5]), Generator::plain(RationalVector::from_pairs(&[(1, 2), (1, 2)]))],
    )
}

fn a3() -> JonssonBasis {
    jonsson_basis_from_summands(&g3(), &[grp(2, vec![loc(&[1, 0], &[3])]), grp(2, vec![loc(&[0, 1], &[5])])])
        .unwrap()
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// `Z²` with `A = 2Z ⊕ 3Z`.
fn z2_two_three() -> JonssonBasis {
    JonssonBasis::from_subgroups(&free(&[&[1, 0], &[0, 1]]), vec![free(&[&[2, 0]]), free(&[&[0, 3]])]).unwrap()
}

#[test]
fn bases_from_summands() {
    let a = a3();
    assert_eq!(a.quotient().invariant_factors, big(&[2]));
    assert_eq!(a.flags(), &[JonssonFlag::Rank1, JonssonFlag::Rank1]);
    assert!(a.summands_are_pure());

    let b = jonsson_basis_from_summands(&g1(), &[free(&[&[1, 0]]), grp(2, vec![Generator::new(vi(&[0, 1]), PrimeSet::All)])])
        .unwrap();
    assert!(b.quotient().is_trivial());

    let err = jonsson_basis_from_summands(&g2(), &[grp(2, vec![loc(&[1, 0], &[2])]), grp(2, vec![loc(&[0, 1], &[3])])])
        .unwrap_err();
    match err {
        Error::InfiniteIndex(w) => assert_eq!(w.prime, 5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn candidates_are_purified() {
    let a = jonsson_basis_from_summands(&g3(), &[free(&[&[3, 0]]), free(&[&[0, 7]])]).unwrap();
    assert_eq!(a.index(), BigInt::from(2));
    assert!(a.summands()[0].equals(&grp(2, vec![loc(&[1, 0], &[3])])));
}

#[test]
fn overlapping_or_short_spans_are_rejected() {
    let z2 = free(&[&[1, 0], &[0, 1]]);
    assert_eq!(
        jonsson_basis_from_summands(&z2, &[free(&[&[1, 0]]), free(&[&[2, 0]])]).unwrap_err(),
        Error::SpanOverlap
    );
    assert_eq!(jonsson_basis_from_summands(&z2, &[free(&[&[1, 0]])]).unwrap_err(), Error::SpanOverlap);
}

#[test]
fn splitting_groupings() {
    assert!(splitting_decompositions_of(&a3(), 2).unwrap().is_empty());

    let b = jonsson_basis_from_summands(&g1(), &[free(&[&[1, 0]]), grp(2, vec![Generator::new(vi(&[0, 1]), PrimeSet::All)])])
        .unwrap();
    let s = splitting_decompositions_of(&b, 2).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].grouping, vec![vec![0], vec![1]]);

    let z3 = free(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let c = jonsson_basis_from_summands(&z3, &[free(&[&[1, 0, 0]]), free(&[&[0, 1, 0]]), free(&[&[0, 0, 1]])]).unwrap();
    assert_eq!(splitting_decompositions_of(&c, 3).unwrap().len(), 4);
}

#[test]
fn lifting() {
    let a = a3();
    let r = lift_quotient_decomposition(&g3(), &a, &[big(&[1])], &[]).unwrap();
    assert!(!r.lifted());
    assert!(lift_quotient_decomposition(&g3(), &a, &[big(&[1])], &[big(&[1])]).is_err());

    let g = g3().direct_sum(&free(&[&[1]]));
    let base = a.direct_sum(&jonsson_basis_from_summands(&free(&[&[1]]), &[free(&[&[1]])]).unwrap()).unwrap();
    let z = free(&[&[0, 0, 1]]);
    let u = image_generators(&base, &z);
    let r = lift_quotient_decomposition(&g, &base, &u, &[big(&[1])]).unwrap();
    match &r.outcome {
        LiftOutcome::Lifted { grouping, decomposition } => {
            assert_eq!(grouping, &vec![vec![2], vec![0, 1]]);
            assert!(decomposition.summands()[0].equals(&z));
        }
        other => panic!("{other:?}"),
    }

    let b = z2_two_three();
    assert_eq!(b.quotient().invariant_factors, big(&[6]));
    let u = image_generators(&b, &free(&[&[1, 0]]));
    let w = image_generators(&b, &free(&[&[0, 1]]));
    let r = lift_quotient_decomposition(b.group(), &b, &u, &w).unwrap();
    assert!(r.lifted());
    let r = lift_quotient_decomposition(b.group(), &b, &w, &u).unwrap();
    assert!(r.lifted());
}

#[test]
fn unrefinable_decompositions() {
    let r = unrefinable_quotient_decompositions(&a3()).unwrap();
    assert_eq!(r.len(), 1);
    assert!(matches!(&r[0].outcome, LiftOutcome::Lifted { grouping, .. } if grouping == &vec![vec![0, 1]]));

    let r = unrefinable_quotient_decompositions(&z2_two_three()).unwrap();
    assert_eq!(r.len(), 1);
    assert!(matches!(&r[0].outcome, LiftOutcome::Lifted { grouping, .. } if grouping.len() == 2));

    let seven = grp(1, vec![loc(&[1], &[7])]);
    let base = a3().direct_sum(&jonsson_basis_from_summands(&seven, std::slice::from_ref(&seven)).unwrap()).unwrap();
    let r = unrefinable_quotient_decompositions(&base).unwrap();
    assert_eq!(r.len(), 1);
    assert!(matches!(&r[0].outcome, LiftOutcome::Lifted { grouping, .. } if grouping == &vec![vec![0, 1], vec![2]]));
    let q = base.quotient();
    assert_eq!(q.subgroup_order(&r[0].blocks[0]), BigInt::from(2));
    assert_eq!(q.subgroup_order(&r[0].blocks[1]), BigInt::one());
    for report in &r {
        assert!(lift_blocks(base.group(), &base, &report.blocks).unwrap().lifted());
    }
}

#[test]
fn regulating() {
    let s = regulating_search(&g3(), 4, 20_000).unwrap();
    assert_eq!(s.index, BigInt::from(2));
    assert!(s.exhaustive);
    assert!(s.best.summands_are_pure());
    assert_eq!(regulating_search(&g1(), 2, 20_000).unwrap().index, BigInt::one());
    assert_eq!(regulating_search(&free(&[&[1, 0], &[0, 1]]), 2, 20_000).unwrap().index, BigInt::one());
    let s = regulating_search(&g2(), 2, 20_000).unwrap();
    assert_eq!(s.index, BigInt::one());
    assert_eq!(s.best.flags(), &[JonssonFlag::SiCertified]);
}

#[test]
fn induced_maps() {
    let z2 = free(&[&[1, 0], &[0, 1]]);
    let a = JonssonBasis::from_subgroups(&z2, vec![free(&[&[2, 0]]), free(&[&[0, 2]])]).unwrap();
    let id = RationalMatrix::identity(2);
    let m = induced_quotient_map(&a, &id).unwrap();
    assert_eq!(m.matrix, vec![big(&[1, 0]), big(&[0, 1])]);
    assert!(m.acts_trivially);
    assert!(kernel_check(&a, &id).unwrap());

    let shear = RationalMatrix::from_i64(&[&[1, 1], &[0, 1]]);
    assert!(!kernel_check(&a, &shear).unwrap());
    let m = induced_quotient_map(&a, &shear).unwrap();
    assert!(!m.acts_trivially);
    assert_ne!(m.matrix, vec![big(&[1, 0]), big(&[0, 1])]);

    let even = RationalMatrix::from_i64(&[&[1, 2], &[0, 1]]);
    assert!(kernel_check(&a, &even).unwrap());
    assert!(induced_quotient_map(&a, &even).unwrap().acts_trivially);

    let not_aut = RationalMatrix::from_i64(&[&[2, 0], &[0, 1]]);
    assert_eq!(kernel_check(&a, &not_aut).unwrap_err(), Error::NotAutomorphism);
}

#[test]
fn transport_and_sums_keep_invariants() {
    let a = a3();
    let b = a.transform(&RationalMatrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap();
    assert_eq!(a.invariants(), b.invariants());
    assert_eq!(a.index(), b.index());

    let z2 = free(&[&[1, 0], &[0, 1]]);
    let x = jonsson_basis_from_summands(&z2, &[free(&[&[1, 0]]), free(&[&[0, 1]])]).unwrap();
    let y = jonsson_basis_from_summands(&z2, &[free(&[&[1, 1]]), free(&[&[1, 2]])]).unwrap();
    assert_eq!(x.invariants(), y.invariants());

    let s = a.direct_sum(&x).unwrap();
    assert_eq!(s.index(), BigInt::from(2));
    assert!(s.summands_are_pure());
    assert_eq!(s.summands().len(), 4);
}
