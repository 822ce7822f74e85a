use tfa_core::group::GroupRep;
use tfa_core::linalg::rational::RationalVector;
use tfa_core::quasi::{commensurable, quasi_equal_strict, QuasiWitness};

/// `Z²` and `Z ⊕ ½Z` are commensurable but no rational multiple of one is
/// contained in the other in both directions at once.
#[test]
fn commensurable_without_strict_witness() {
    let z2 = GroupRep::free(2, &[RationalVector::from_ints(&[1, 0]), RationalVector::from_ints(&[0, 1])]).unwrap();
    let half = GroupRep::free(2, &[RationalVector::from_ints(&[1, 0]), RationalVector::from_pairs(&[(0, 1), (1, 2)])]).unwrap();
    let w = commensurable(&z2, &half).expect("commensurable");
    assert!(w.verify(&z2, &half));
    assert!(matches!(w, QuasiWitness::Commensurable { .. }));
    assert_eq!(w.to_string(), "a = 1, b = 2");
    assert!(quasi_equal_strict(&z2, &half).is_none());
    assert!(quasi_equal_strict(&half, &z2).is_none());
}
