use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfa_core::corpus::{generate_with, sample, Certificate, CorpusConfig, Profile};
use tfa_core::jonsson::regulating_search;
use tfa_core::suite::{check_automorphism, check_basis_properties, sample_automorphisms, sample_bases, sample_elements};

#[test]
fn sampled_bases_behave() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cg in sample(40, 0, &CorpusConfig::default()) {
        let xs = sample_elements(&cg.group, 8, &mut rng);
        for b in sample_bases(&cg.group, 2, &mut rng) {
            check_basis_properties(&b, &xs).unwrap();
        }
    }
}

#[test]
fn sampled_automorphisms_transport_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut seen = 0;
    for cg in sample(24, 300, &CorpusConfig::small()) {
        let xs = sample_elements(&cg.group, 6, &mut rng);
        let bases = sample_bases(&cg.group, 1, &mut rng);
        let Some(b) = bases.first() else { continue };
        for a in sample_automorphisms(&cg.group, 3, &mut rng) {
            check_automorphism(&cg.group, &a, b, &xs).unwrap();
            seen += 1;
        }
    }
    assert!(seen >= 24);
}

#[test]
fn acd_regulating_index_divides_coset_order() {
    for seed in 0..12 {
        let cg = generate_with(Profile::Acd, seed, &CorpusConfig::small());
        let Certificate::AlmostCompletelyDecomposable { d, .. } = &cg.certificate else { unreachable!() };
        let s = regulating_search(&cg.group, 2, 5_000).unwrap();
        assert!(d.is_multiple_of(&s.index), "index {} vs d {} for {}", s.index, d, cg.group);
        assert!(s.index >= BigInt::from(1));
    }
}
