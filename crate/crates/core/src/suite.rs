//! Property checks run by `tfa verify` and by the acceptance tests. Each check
//! recomputes a claim by an independent route and reports a mismatch as an
//! error string.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bases::{b_representation, is_basis, minimal_multiplier, representation_is_canonical, BasisRecord};
use crate::decomp::{
    automorphism_check, automorphism_from_summand_isos, candidate_lines, check_splitting_partition,
    complete_decomposition_search, decompositions_isomorphic, set_partitions, DecompositionRecord, IsoVerdict,
    PartitionRecord,
};
use crate::group::GroupRep;
use crate::jonsson::{jonsson_basis_from_summands, regulating_search, JonssonBasis};
use crate::linalg::rational::RationalVector;
use crate::linalg::{Rational, RationalMatrix, Subspace};
use crate::oracle::{brute_force_member, brute_force_purify};
use crate::primes::prime_divisors;
use crate::quasi::{commensurable, quasi_equal_strict, QuasiWitness};
use crate::strong::{strong_decomposability_witness_search, typeset_obstruction_certificate, WitnessSearch};

pub type CheckResult = std::result::Result<(), String>;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn combination(gens: &[RationalVector], n: usize, coeffs: &[i64]) -> RationalVector {
    let mut v = RationalVector::zeros(n);
    for (c, g) in coeffs.iter().zip(gens) {
        if *c != 0 {
            v = &v + &g.scale(&r(*c));
        }
    }
    v
}

/// Vectors of `span(G)`: small integer combinations of the generators,
/// divided by a prime power of exponent at most 4. Roughly half are members.
pub fn sample_elements(g: &GroupRep, count: usize, rng: &mut ChaCha8Rng) -> Vec<RationalVector> {
    let gens: Vec<RationalVector> = g.generators().iter().map(|x| x.vector.clone()).collect();
    let n = g.ambient_dim();
    let mut primes = vec![2u64, 3, 5];
    primes.extend(g.tagged_primes());
    primes.sort_unstable();
    primes.dedup();
    let mut out = Vec::with_capacity(count);
    if gens.is_empty() {
        return out;
    }
    while out.len() < count {
        let coeffs: Vec<i64> = (0..gens.len()).map(|_| rng.gen_range(-2..=2)).collect();
        let v = combination(&gens, n, &coeffs);
        if v.is_zero() {
            continue;
        }
        let p = *primes.choose(rng).expect("nonempty");
        let e = rng.gen_range(0..=4u32);
        out.push(v.scale(&Rational::new(BigInt::one(), num_traits::pow(BigInt::from(p), e as usize))));
    }
    out
}

/// Random bases of `G` built from generators, some divided by inverted primes.
pub fn sample_bases(g: &GroupRep, count: usize, rng: &mut ChaCha8Rng) -> Vec<BasisRecord> {
    let n = g.ambient_dim();
    let rank = g.rank();
    let mut out = Vec::new();
    if rank == 0 {
        return out;
    }
    let pieces: Vec<RationalVector> = g
        .generators()
        .iter()
        .flat_map(|x| {
            let mut v = vec![x.vector.clone()];
            for &p in x.inverted.finite_primes() {
                v.push(x.vector.scale(&Rational::new(BigInt::one(), BigInt::from(p * p))));
            }
            if x.inverted.is_all() {
                v.push(x.vector.scale(&Rational::new(BigInt::one(), BigInt::from(7))));
            }
            v
        })
        .collect();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count {
        tries += 1;
        let elems: Vec<RationalVector> = (0..rank)
            .map(|_| {
                let coeffs: Vec<i64> = (0..pieces.len()).map(|_| rng.gen_range(-1..=1)).collect();
                combination(&pieces, n, &coeffs)
            })
            .collect();
        if elems.iter().any(RationalVector::is_zero) {
            continue;
        }
        if let Ok(b) = BasisRecord::new(g, elems) {
            out.push(b);
        }
    }
    out
}

fn complete_to_ambient(rows: &mut Vec<RationalVector>, n: usize) {
    for i in 0..n {
        let e = RationalVector::unit(n, i);
        rows.push(e);
        if Subspace::span(n, rows).dim() != rows.len() {
            rows.pop();
        }
    }
}

/// Distinct automorphisms of the form `B⁻¹·E·B` with `E` a signed
/// permutation or an elementary shear in the coordinates of a basis `B`.
pub fn sample_automorphisms(g: &GroupRep, count: usize, rng: &mut ChaCha8Rng) -> Vec<RationalMatrix> {
    let n = g.ambient_dim();
    let rank = g.rank();
    let mut out: Vec<RationalMatrix> = Vec::new();
    if rank == 0 {
        return out;
    }
    let minus = RationalMatrix::identity(n).scale(&r(-1));
    out.push(minus);
    let mut frames: Vec<Vec<RationalVector>> =
        sample_bases(g, 4, rng).into_iter().map(|b| b.elements().to_vec()).collect();
    let lines = candidate_lines(g, 1);
    if lines.len() >= rank {
        for _ in 0..4 {
            let pick: Vec<RationalVector> = lines.choose_multiple(rng, rank).cloned().collect();
            if Subspace::span(n, &pick).dim() == rank {
                frames.push(pick);
            }
        }
    }
    for _ in 0..8 * count {
        if out.len() >= count || frames.is_empty() {
            break;
        }
        let mut b = frames.choose(rng).expect("nonempty").clone();
        complete_to_ambient(&mut b, n);
        let frame = RationalMatrix::from_rows(n, b);
        let Some(inv) = frame.inverse() else { continue };
        let mut e: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(0..rank);
            let j = rng.gen_range(0..rank);
            match rng.gen_range(0..3) {
                0 => e.swap(i, j),
                1 => e[i].iter_mut().for_each(|x| *x = -*x),
                _ if i != j => {
                    let k = [-1, 1, 2][rng.gen_range(0..3)];
                    let src = e[j].clone();
                    e[i].iter_mut().zip(src).for_each(|(x, y)| *x += k * y);
                }
                _ => {}
            }
        }
        let rows: Vec<&[i64]> = e.iter().map(Vec::as_slice).collect();
        let alpha = inv.mul(&RationalMatrix::from_i64(&rows)).mul(&frame);
        if out.contains(&alpha) {
            continue;
        }
        if automorphism_check(g, &alpha).unwrap_or(false) {
            out.push(alpha);
        }
    }
    out
}

/// `member` against `brute_force_member`.
pub fn check_member_oracle(g: &GroupRep, xs: &[RationalVector], bound: u32) -> CheckResult {
    for x in xs {
        let fast = g.member(x).map_err(|e| e.to_string())?;
        let slow = brute_force_member(g, x, bound);
        if fast != slow {
            return Err(format!("member({x}) = {fast} but the oracle says {slow} in {g}"));
        }
    }
    Ok(())
}

/// `purify` of a line against `brute_force_purify`.
pub fn check_purify_oracle(g: &GroupRep, lines: &[RationalVector], bound: u32) -> CheckResult {
    for u in lines {
        let fast = g.purify_vectors(std::slice::from_ref(u)).map_err(|e| e.to_string())?;
        let gens = brute_force_purify(g, u, bound).ok_or_else(|| format!("oracle bound too small for {u} in {g}"))?;
        let slow = GroupRep::new(g.ambient_dim(), gens).map_err(|e| e.to_string())?;
        if !fast.equals(&slow) {
            return Err(format!("purify({u}) = {fast} but the oracle gives {slow} in {g}"));
        }
    }
    Ok(())
}

/// Purification, span and torsion quotient of a basis, the minimal
/// multiplier of a rescaled copy, and B-representations of sample members.
pub fn check_basis_properties(basis: &BasisRecord, samples: &[RationalVector]) -> CheckResult {
    let g = basis.group();
    let n = g.ambient_dim();
    let free = basis.free_span();
    if free.span() != g.span() {
        return Err(format!("[B] differs from [G] for basis {:?}", basis.elements()));
    }
    if !g.purify(free.span()).map_err(|e| e.to_string())?.equals(g) {
        return Err("B_* differs from G".into());
    }
    for gen in g.generators() {
        if free.order_modulo(&gen.vector).is_none() {
            return Err(format!("{} has no finite order modulo <B>", gen.vector));
        }
    }
    let scaled: Vec<RationalVector> = basis
        .elements()
        .iter()
        .enumerate()
        .map(|(i, b)| b.scale(&Rational::new(BigInt::one(), BigInt::from([2, 3, 1, 6, 5][i % 5]))))
        .collect();
    let m = minimal_multiplier(g, &scaled).map_err(|e| e.to_string())?;
    let all_in = |k: &BigInt| scaled.iter().all(|b| g.contains(&b.scale(&Rational::from_integer(k.clone()))));
    if !all_in(&m) {
        return Err(format!("minimal multiplier {m} does not bring the vectors into G"));
    }
    for p in prime_divisors(&m) {
        if all_in(&(&m / BigInt::from(p))) {
            return Err(format!("multiplier {m} is not minimal: {p} can be removed"));
        }
    }
    for a in samples.iter().filter(|a| g.contains(a)) {
        let rep = b_representation(basis, a).map_err(|e| e.to_string())?;
        if !representation_is_canonical(&rep) {
            return Err(format!("representation of {a} is not reduced"));
        }
        let mut sum = RationalVector::zeros(n);
        for (c, b) in rep.coefficients.iter().zip(basis.elements()) {
            sum = &sum + &b.scale(&Rational::from_integer(c.clone()));
        }
        if sum != a.scale(&Rational::from_integer(rep.k.clone())) {
            return Err(format!("representation of {a} does not reassemble"));
        }
    }
    Ok(())
}

/// Purification, types, bases and splitting partitions are carried along by
/// an automorphism.
pub fn check_automorphism(g: &GroupRep, alpha: &RationalMatrix, basis: &BasisRecord, samples: &[RationalVector]) -> CheckResult {
    let err = |e: crate::Error| e.to_string();
    for s in basis.elements().iter().map(std::slice::from_ref).chain(std::iter::once(&basis.elements()[..1])) {
        let img: Vec<RationalVector> = s.iter().map(|x| alpha.apply(x)).collect();
        let left = g.purify_vectors(s).map_err(err)?.transform(alpha).map_err(err)?;
        let right = g.purify_vectors(&img).map_err(err)?;
        if !left.equals(&right) {
            return Err(format!("S_*α differs from (Sα)_* for S = {s:?}"));
        }
    }
    for a in samples.iter().filter(|a| g.contains(a)) {
        let t1 = g.element_type(a).map_err(err)?;
        let t2 = g.element_type(&alpha.apply(a)).map_err(err)?;
        if t1 != t2 {
            return Err(format!("type of {a} changes from {t1} to {t2}"));
        }
    }
    let image: Vec<RationalVector> = basis.elements().iter().map(|b| alpha.apply(b)).collect();
    if !is_basis(g, &image) {
        return Err("image of a basis is not a basis".into());
    }
    let moved = BasisRecord::new(g, image).map_err(err)?;
    for blocks in set_partitions(basis.len(), basis.len()).into_iter().filter(|b| b.len() >= 2) {
        let p = PartitionRecord::new(basis.clone(), blocks.clone()).map_err(err)?;
        let q = PartitionRecord::new(moved.clone(), blocks.clone()).map_err(err)?;
        if check_splitting_partition(&p).0 != check_splitting_partition(&q).0 {
            return Err(format!("splitting of partition {blocks:?} not transported"));
        }
    }
    Ok(())
}

/// A decomposition and its image under an automorphism are never declared
/// non-isomorphic, and
/// every `Yes` verdict between found decompositions assembles into an
/// automorphism carrying one onto the other.
pub fn check_decompositions(decomps: &[DecompositionRecord], autos: &[RationalMatrix]) -> CheckResult {
    let err = |e: crate::Error| e.to_string();
    for d in decomps {
        for alpha in autos {
            let moved = d.transform(alpha).map_err(err)?;
            if !moved.sum().equals(d.group()) {
                return Err("image of a decomposition does not reassemble the group".into());
            }
            match decompositions_isomorphic(d, &moved).map_err(err)? {
                IsoVerdict::No { reason } => {
                    return Err(format!("a decomposition and its image are declared non-isomorphic: {reason}"))
                }
                IsoVerdict::Unknown { reason } if d.summands().iter().all(|s| s.rank() == 1) => {
                    return Err(format!("rank-1 decomposition left undecided: {reason}"))
                }
                _ => {}
            }
        }
    }
    for d1 in decomps {
        for d2 in decomps {
            if let IsoVerdict::Yes { pairing } = decompositions_isomorphic(d1, d2).map_err(err)? {
                let alpha = automorphism_from_summand_isos(d1, d2, &pairing).map_err(err)?;
                for (i, &j) in pairing.iter().enumerate() {
                    let img = d1.summands()[i].transform(&alpha).map_err(err)?;
                    if !img.equals(&d2.summands()[j]) {
                        return Err("assembled automorphism misses a summand".into());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Strict quasi-equality implies commensurability and equal spans; returned
/// witnesses re-verify.
pub fn check_quasi_pair(h: &GroupRep, g: &GroupRep) -> CheckResult {
    let strict = quasi_equal_strict(h, g);
    let comm = commensurable(h, g);
    if let Some(w) = &strict {
        if !w.verify(h, g) {
            return Err(format!("strict witness {w} fails"));
        }
        if comm.is_none() {
            return Err("strictly quasi-equal but not commensurable".into());
        }
        if h.span() != g.span() {
            return Err("strictly quasi-equal with different spans".into());
        }
    }
    if let Some(w) = &comm {
        if !w.verify(h, g) {
            return Err(format!("commensurability witness {w} fails"));
        }
    }
    if comm.is_some() != commensurable(g, h).is_some() || strict.is_some() != quasi_equal_strict(g, h).is_some() {
        return Err("quasi relations are not symmetric".into());
    }
    Ok(())
}

/// Purifications of two spanning sets of the same subspace are equal, and a
/// strict witness between them is a unit.
pub fn check_pure_quasi_pair(g: &GroupRep, u: &[RationalVector], scale: &Rational) -> CheckResult {
    let err = |e: crate::Error| e.to_string();
    let p = g.purify_vectors(u).map_err(err)?;
    let v: Vec<RationalVector> = u.iter().map(|x| x.scale(scale)).collect();
    let q = g.purify_vectors(&v).map_err(err)?;
    if !p.equals(&q) {
        return Err("purifications of the same subspace differ".into());
    }
    match quasi_equal_strict(&p, &q) {
        Some(QuasiWitness::Strict { r }) if p.scale(&r).map_err(err)?.equals(&p) => Ok(()),
        other => Err(format!("pure pair has strict witness {other:?}")),
    }
}

/// Jónsson bases of `G` obtained from a regulating search and from any
/// supplied candidate families.
pub fn jonsson_bases(g: &GroupRep, families: &[Vec<GroupRep>], height: u32) -> Vec<JonssonBasis> {
    let mut out: Vec<JonssonBasis> =
        families.iter().filter_map(|f| jonsson_basis_from_summands(g, f).ok()).collect();
    if let Ok(s) = regulating_search(g, height, 2_000) {
        out.push(s.best);
    }
    out
}

/// Summand count and (rank, typeset) multiset agree across Jónsson bases.
pub fn check_jonsson_uniqueness(bases: &[JonssonBasis]) -> CheckResult {
    let Some(first) = bases.first() else { return Ok(()) };
    let inv = first.invariants();
    for b in &bases[1..] {
        if b.summands().len() != first.summands().len() {
            return Err(format!("summand counts differ: {} vs {}", first.summands().len(), b.summands().len()));
        }
        if b.invariants() != inv {
            return Err("summand invariants differ".into());
        }
    }
    Ok(())
}

/// Number of isomorphism classes among the summands found by the complete
/// decomposition search at each height.
pub fn lady_bucket_counts(g: &GroupRep, heights: &[u32]) -> crate::Result<Vec<usize>> {
    heights
        .iter()
        .map(|&h| {
            let search = complete_decomposition_search(g, &[], h, 2_000)?;
            let mut classes: HashSet<String> = HashSet::new();
            let mut higher: Vec<GroupRep> = Vec::new();
            for d in &search.decompositions {
                for s in d.summands() {
                    if s.rank() == 1 {
                        let t = s.element_type(&s.generators()[0].vector)?;
                        classes.insert(format!("1:{}", t.divisible_primes()));
                    } else if !higher.iter().any(|x| x.equals(s)) {
                        higher.push(s.clone());
                    }
                }
            }
            Ok(classes.len() + higher.len())
        })
        .collect()
}

/// A typeset certificate and a decomposability witness never coexist.
pub fn check_si_soundness(g: &GroupRep, height: u32) -> CheckResult {
    if g.rank() > 3 {
        return Ok(());
    }
    let cert = typeset_obstruction_certificate(g);
    let search = strong_decomposability_witness_search(g, height, 2_000).map_err(|e| e.to_string())?;
    if cert.is_some() && matches!(search, WitnessSearch::QuasiDecomposition { .. }) {
        return Err(format!("{g} has both a certificate and a witness"));
    }
    Ok(())
}

fn nonzero_scale(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.gen_range(1..=6);
    let d: i64 = rng.gen_range(1..=6);
    let q = Rational::new(BigInt::from(n), BigInt::from(d));
    if q.is_zero() {
        Rational::one()
    } else {
        q
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub height: u32,
    pub oracle_bound: u32,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { height: 2, oracle_bound: 8, samples: 24 }
    }
}

fn record(out: &mut Vec<Check>, name: &str, result: CheckResult) {
    let (passed, detail) = match result {
        Ok(()) => (true, String::new()),
        Err(e) => (false, e),
    };
    out.push(Check { name: name.to_string(), passed, detail });
}

/// Every property check on one group.
pub fn run_suite(g: &GroupRep, cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = Vec::new();
    let xs = sample_elements(g, cfg.samples, rng);
    record(&mut out, "generators are members", {
        match g.generators().iter().find(|x| !g.contains(&x.vector)) {
            Some(x) => Err(format!("{} is not a member", x.vector)),
            None => Ok(()),
        }
    });
    record(&mut out, "member agrees with oracle", check_member_oracle(g, &xs, cfg.oracle_bound));
    let lines: Vec<RationalVector> = candidate_lines(g, 1).into_iter().take(cfg.samples).collect();
    record(&mut out, "purify agrees with oracle", check_purify_oracle(g, &lines, cfg.oracle_bound / 2));
    let bases = sample_bases(g, 3, rng);
    record(&mut out, "basis properties", bases.iter().try_for_each(|b| check_basis_properties(b, &xs)));
    let autos = sample_automorphisms(g, 6, rng);
    record(
        &mut out,
        "automorphism invariants",
        autos.iter().zip(bases.iter().cycle()).try_for_each(|(a, b)| check_automorphism(g, a, b, &xs)),
    );
    if g.rank() <= 3 {
        let decomps = complete_decomposition_search(g, &bases, 1, 500).map(|s| s.decompositions);
        record(
            &mut out,
            "decomposition isomorphisms",
            decomps.map_err(|e| e.to_string()).and_then(|d| check_decompositions(&d, &autos)),
        );
    }
    let scale = nonzero_scale(rng);
    record(&mut out, "quasi-equality of rescaled copy", {
        match g.scale(&scale) {
            Ok(h) => check_quasi_pair(g, &h).and_then(|_| match quasi_equal_strict(g, &h) {
                Some(_) => Ok(()),
                None => Err("rescaled copy has no strict witness".into()),
            }),
            Err(e) => Err(e.to_string()),
        }
    });
    record(&mut out, "quasi-equality of basis span", {
        bases.iter().try_for_each(|b| check_quasi_pair(&b.free_span(), g))
    });
    if g.rank() > 0 {
        let u = vec![lines.first().cloned().unwrap_or_else(|| g.span().basis()[0].clone())];
        record(&mut out, "pure quasi-equal pairs are equal", check_pure_quasi_pair(g, &u, &scale));
    }
    if g.rank() <= 3 {
        let families: Vec<Vec<GroupRep>> = bases
            .iter()
            .map(|b| b.elements().iter().map(|x| GroupRep::free(g.ambient_dim(), std::slice::from_ref(x)).expect("nonzero")).collect())
            .collect();
        let js = jonsson_bases(g, &families, cfg.height);
        record(&mut out, "jonsson invariants agree", check_jonsson_uniqueness(&js));
        record(&mut out, "certificate and witness exclusive", check_si_soundness(g, cfg.height));
    }
    out
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::corpus::{sample, CorpusConfig};
    use crate::group::Generator;
    use crate::primes::PrimeSet;

    fn g3() -> GroupRep {
        GroupRep::new(
            2,
            vec![
                Generator::new(RationalVector::from_ints(&[1, 0]), PrimeSet::of(&[3]).unwrap()),
                Generator::new(RationalVector::from_ints(&[0, 1]), PrimeSet::of(&[5]).unwrap()),
                Generator::plain(RationalVector::from_pairs(&[(1, 2), (1, 2)])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = g3();
        assert_eq!(sample_elements(&g, 10, &mut rng).len(), 10);
        for b in sample_bases(&g, 4, &mut rng) {
            assert!(is_basis(&g, b.elements()));
        }
        let autos = sample_automorphisms(&g, 5, &mut rng);
        assert!(autos.len() >= 2);
        for a in &autos {
            assert!(automorphism_check(&g, a).unwrap());
        }
    }

    #[test]
    fn suite_passes_on_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in run_suite(&g3(), &SuiteConfig::default(), &mut rng) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn suite_passes_on_small_corpus() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for cg in sample(12, 40, &CorpusConfig::small()) {
            for c in run_suite(&cg.group, &SuiteConfig::default(), &mut rng) {
                assert!(c.passed, "{} on {}: {}", c.name, cg.group, c.detail);
            }
        }
    }

    #[test]
    fn lady_counts_are_monotone_for_g3() {
        let counts = lady_bucket_counts(&g3(), &[1, 2, 3]).unwrap();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]));
    }
}
