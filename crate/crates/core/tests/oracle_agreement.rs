use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tfa_core::corpus::{sample, CorpusConfig};
use tfa_core::decomp::candidate_lines;
use tfa_core::suite::{check_member_oracle, check_purify_oracle, sample_elements};

#[test]
fn member_matches_oracle_on_small_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for cg in sample(60, 1_000, &CorpusConfig::small()) {
        let xs = sample_elements(&cg.group, 20, &mut rng);
        check_member_oracle(&cg.group, &xs, 8).unwrap();
    }
}

#[test]
fn purify_matches_oracle_on_small_corpus() {
    for cg in sample(40, 2_000, &CorpusConfig::small()) {
        let lines: Vec<_> = candidate_lines(&cg.group, 1).into_iter().take(6).collect();
        check_purify_oracle(&cg.group, &lines, 4).unwrap();
    }
}
