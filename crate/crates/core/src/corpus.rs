//! Reproducible random groups for property testing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{Generator, GroupRep};
use crate::linalg::rational::RationalVector;
use crate::linalg::Rational;
use crate::primes::PrimeSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Cd,
    Acd,
    Butler,
    Mixed,
}

impl Profile {
    pub const ALL: [Profile; 4] = [Profile::Cd, Profile::Acd, Profile::Butler, Profile::Mixed];

    fn tag(self) -> u64 {
        match self {
            Profile::Cd => 0x6364,
            Profile::Acd => 0x616364,
            Profile::Butler => 0x62746c72,
            Profile::Mixed => 0x6d697864,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Cd => "cd",
            Profile::Acd => "acd",
            Profile::Butler => "butler",
            Profile::Mixed => "mixed",
        })
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cd" => Ok(Profile::Cd),
            "acd" => Ok(Profile::Acd),
            "butler" => Ok(Profile::Butler),
            "mixed" => Ok(Profile::Mixed),
            _ => Err(format!("unknown profile {s:?} (expected cd, acd, butler or mixed)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub max_rank: usize,
    pub primes: Vec<u64>,
    /// Chance that a rank-1 piece is a copy of `Q`.
    pub rational_weight: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { max_rank: 5, primes: vec![2, 3, 5, 7], rational_weight: 0.08 }
    }
}

impl CorpusConfig {
    pub fn small() -> Self {
        CorpusConfig { max_rank: 3, primes: vec![2, 3, 5], rational_weight: 0.08 }
    }
}

/// How a corpus group was built; checked by [`CorpusGroup::verify`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `G = ⊕ summands`, so the summands form an index-1 Jónsson basis.
    CompletelyDecomposable { summands: Vec<GroupRep> },
    /// `G = A + Z·coset` with `A = ⊕ summands` and `d·coset ∈ A`.
    AlmostCompletelyDecomposable {
        summands: Vec<GroupRep>,
        coset: RationalVector,
        #[serde(serialize_with = "crate::serde_util::big")]
        d: BigInt,
    },
    /// `G = Σ pieces` with more rank-1 pieces than its rank.
    Butler { pieces: usize },
    /// `G = G_1 ⊕ G_2` in block coordinates.
    Mixed { parts: Vec<CorpusGroup> },
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusGroup {
    pub profile: Profile,
    pub seed: u64,
    pub group: GroupRep,
    pub certificate: Certificate,
}

impl CorpusGroup {
    pub fn verify(&self) -> bool {
        let g = &self.group;
        match &self.certificate {
            Certificate::CompletelyDecomposable { summands } => {
                let dims: usize = summands.iter().map(GroupRep::rank).sum();
                let sum = GroupRep::sum(g.ambient_dim(), summands);
                dims == g.rank() && sum.is_ok_and(|s| s.equals(g))
            }
            Certificate::AlmostCompletelyDecomposable { summands, coset, d } => {
                let Ok(a) = GroupRep::sum(g.ambient_dim(), summands) else { return false };
                let dims: usize = summands.iter().map(GroupRep::rank).sum();
                let in_a = a.contains(&coset.scale(&Rational::from_integer(d.clone())));
                let index = g.index_and_quotient(&a).ok().and_then(|q| q.index());
                dims == g.rank()
                    && in_a
                    && g.contains(coset)
                    && index.is_some_and(|i| (d % i).is_zero())
            }
            Certificate::Butler { pieces } => *pieces == g.generators().len() && *pieces > g.rank(),
            Certificate::Mixed { parts } => {
                parts.len() == 2
                    && parts.iter().all(CorpusGroup::verify)
                    && parts[0].group.direct_sum(&parts[1].group).equals(g)
            }
        }
    }
}

pub fn generate(profile: Profile, seed: u64) -> CorpusGroup {
    generate_with(profile, seed, &CorpusConfig::default())
}

pub fn generate_with(profile: Profile, seed: u64, config: &CorpusConfig) -> CorpusGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ profile.tag().rotate_left(32));
    build(profile, seed, config, config.max_rank, &mut rng)
}

fn build(profile: Profile, seed: u64, config: &CorpusConfig, max_rank: usize, rng: &mut ChaCha8Rng) -> CorpusGroup {
    match profile {
        Profile::Cd => cd(seed, config, max_rank, rng),
        Profile::Acd => acd(seed, config, max_rank, rng),
        Profile::Butler => butler(seed, config, max_rank, rng),
        Profile::Mixed => mixed(seed, config, max_rank, rng),
    }
}

fn inverted(config: &CorpusConfig, rng: &mut ChaCha8Rng) -> PrimeSet {
    if rng.gen_bool(config.rational_weight) {
        return PrimeSet::All;
    }
    let k = rng.gen_range(0..=config.primes.len().min(2));
    let mut ps: Vec<u64> = config.primes.choose_multiple(rng, k).copied().collect();
    ps.sort_unstable();
    PrimeSet::of(&ps).expect("configured primes are prime")
}

/// Rows of a random unimodular integer matrix.
fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<RationalVector> {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=n) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = [-1, 1, 2][rng.gen_range(0..3)];
            let src = rows[j].clone();
            for (x, y) in rows[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
    }
    rows.iter().map(|r| RationalVector::from_ints(r)).collect()
}

fn scaled(v: &RationalVector, rng: &mut ChaCha8Rng) -> RationalVector {
    let scales = [(1, 1), (1, 1), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3)];
    let (n, d) = scales[rng.gen_range(0..scales.len())];
    v.scale(&Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn cd(seed: u64, config: &CorpusConfig, max_rank: usize, rng: &mut ChaCha8Rng) -> CorpusGroup {
    let r = rng.gen_range(1..=max_rank);
    let rows = unimodular(r, rng);
    let summands: Vec<GroupRep> = rows
        .iter()
        .map(|u| GroupRep::new(r, vec![Generator::new(scaled(u, rng), inverted(config, rng))]).expect("nonzero"))
        .collect();
    let group = GroupRep::sum(r, &summands).expect("same ambient");
    CorpusGroup { profile: Profile::Cd, seed, group, certificate: Certificate::CompletelyDecomposable { summands } }
}

fn acd(seed: u64, config: &CorpusConfig, max_rank: usize, rng: &mut ChaCha8Rng) -> CorpusGroup {
    let r = rng.gen_range(1..=max_rank.max(1)).max(max_rank.min(2));
    let rows = unimodular(r, rng);
    let summands: Vec<GroupRep> = rows
        .iter()
        .map(|u| {
            let mut s = inverted(config, rng);
            while s.is_all() {
                s = inverted(config, rng);
            }
            GroupRep::new(r, vec![Generator::new(u.clone(), s)]).expect("nonzero")
        })
        .collect();
    let d = BigInt::from(*[2u64, 3, 4, 5, 6, 9].choose(rng).expect("nonempty"));
    let mut coset = RationalVector::zeros(r);
    for u in &rows {
        let c: i64 = rng.gen_range(0..3);
        coset = &coset + &u.scale(&Rational::from_integer(c.into()));
    }
    if coset.is_zero() {
        coset = rows[0].clone();
    }
    let coset = coset.scale(&Rational::new(BigInt::one(), d.clone()));
    let mut gens: Vec<Generator> = summands.iter().flat_map(|s| s.generators().to_vec()).collect();
    gens.push(Generator::plain(coset.clone()));
    let group = GroupRep::new(r, gens).expect("nonzero");
    CorpusGroup {
        profile: Profile::Acd,
        seed,
        group,
        certificate: Certificate::AlmostCompletelyDecomposable { summands, coset, d },
    }
}

fn butler(seed: u64, config: &CorpusConfig, max_rank: usize, rng: &mut ChaCha8Rng) -> CorpusGroup {
    let r = rng.gen_range(1..=max_rank.min(4));
    let rows = unimodular(r, rng);
    let mut gens: Vec<Generator> = rows.iter().map(|u| Generator::new(u.clone(), inverted(config, rng))).collect();
    let extra = rng.gen_range(1..=2);
    for _ in 0..extra {
        let mut v = RationalVector::zeros(r);
        while v.is_zero() {
            for u in &rows {
                let c: i64 = rng.gen_range(-1..=2);
                v = &v + &u.scale(&Rational::from_integer(c.into()));
            }
        }
        gens.push(Generator::new(v, inverted(config, rng)));
    }
    let pieces = gens.len();
    let group = GroupRep::new(r, gens).expect("nonzero");
    CorpusGroup { profile: Profile::Butler, seed, group, certificate: Certificate::Butler { pieces } }
}

fn mixed(seed: u64, config: &CorpusConfig, max_rank: usize, rng: &mut ChaCha8Rng) -> CorpusGroup {
    let first = rng.gen_range(1..max_rank.max(2));
    let second = rng.gen_range(1..=max_rank.saturating_sub(first).max(1));
    let pick = |rng: &mut ChaCha8Rng| [Profile::Cd, Profile::Acd, Profile::Butler][rng.gen_range(0..3)];
    let p1 = pick(rng);
    let a = build(p1, seed, config, first, rng);
    let p2 = pick(rng);
    let b = build(p2, seed, config, second, rng);
    let group = a.group.direct_sum(&b.group);
    CorpusGroup { profile: Profile::Mixed, seed, group, certificate: Certificate::Mixed { parts: vec![a, b] } }
}

/// `count` groups cycling through the profiles, seeds `start..`.
pub fn sample(count: usize, start: u64, config: &CorpusConfig) -> Vec<CorpusGroup> {
    (0..count)
        .map(|i| {
            let profile = Profile::ALL[i % Profile::ALL.len()];
            generate_with(profile, start + i as u64, config)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        for p in Profile::ALL {
            let a = generate(p, 17);
            let b = generate(p, 17);
            assert_eq!(a.group.to_string(), b.group.to_string());
        }
        assert_ne!(generate(Profile::Butler, 1).group.to_string(), generate(Profile::Butler, 2).group.to_string());
    }

    #[test]
    fn certificates_hold() {
        for g in sample(120, 0, &CorpusConfig::default()) {
            assert!(g.verify(), "{} seed {}: {}", g.profile, g.seed, g.group);
            assert!(g.group.rank() <= 5);
            assert!(g.group.tagged_primes().iter().all(|p| [2, 3, 5, 7].contains(p)));
        }
    }

    #[test]
    fn small_config_respects_bounds() {
        for g in sample(80, 500, &CorpusConfig::small()) {
            assert!(g.group.rank() <= 3, "{}", g.group);
            assert!(g.group.tagged_primes().iter().all(|p| [2, 3, 5].contains(p)));
        }
    }

    #[test]
    fn shapes() {
        let g = generate(Profile::Cd, 1);
        assert!(matches!(g.certificate, Certificate::CompletelyDecomposable { .. }));
        let g = generate(Profile::Butler, 3);
        assert!(g.group.generators().len() > g.group.rank());
        assert_eq!("acd".parse::<Profile>().unwrap(), Profile::Acd);
        assert!("other".parse::<Profile>().is_err());
    }
}
