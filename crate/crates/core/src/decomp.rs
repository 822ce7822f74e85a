//! Splitting partitions of bases, complete-decomposition search, and
//! isomorphism of decompositions.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bases::BasisRecord;
use crate::error::{Error, Result};
use crate::group::{GroupRep, PrimeClass};
use crate::linalg::rational::{Rational, RationalVector};
use crate::linalg::subspace::Subspace;
use crate::linalg::RationalMatrix;
use crate::primes::PrimeSet;

pub const DEFAULT_RANK_LIMIT: usize = 10;
pub const DEFAULT_MAX_BASES: usize = 20_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummandFlag {
    Rank1,
    IndecomposableCertified,
    IndecomposableUnknown,
}

/// Summands of (a subgroup of) `group`, each pure in `group`.
#[derive(Clone, Debug)]
pub struct DecompositionRecord {
    group: GroupRep,
    summands: Vec<GroupRep>,
    flags: Vec<SummandFlag>,
}

impl DecompositionRecord {
    pub fn new(group: GroupRep, summands: Vec<GroupRep>, flags: Vec<SummandFlag>) -> Self {
        DecompositionRecord { group, summands, flags }
    }

    /// Flags from rank alone: rank 1 or unknown.
    pub fn with_default_flags(group: GroupRep, summands: Vec<GroupRep>) -> Self {
        let flags = summands.iter().map(flag_for).collect();
        DecompositionRecord { group, summands, flags }
    }

    pub fn group(&self) -> &GroupRep {
        &self.group
    }

    pub fn summands(&self) -> &[GroupRep] {
        &self.summands
    }

    pub fn flags(&self) -> &[SummandFlag] {
        &self.flags
    }

    pub fn sum(&self) -> GroupRep {
        GroupRep::sum(self.group.ambient_dim(), &self.summands).expect("summands share the ambient space")
    }

    /// Whether the summands add up to the whole group.
    pub fn is_full(&self) -> bool {
        self.group.is_subgroup_of(&self.sum())
    }

    pub fn spans(&self) -> Vec<&Subspace> {
        self.summands.iter().map(GroupRep::span).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.flags.iter().all(|f| *f != SummandFlag::IndecomposableUnknown)
    }

    /// Canonical identity: summands are pure, so their spans determine them.
    pub fn key(&self) -> Vec<Vec<RationalVector>> {
        let mut k: Vec<Vec<RationalVector>> = self.summands.iter().map(|s| s.span().basis().to_vec()).collect();
        k.sort();
        k
    }

    /// Image under a linear map.
    pub fn transform(&self, m: &RationalMatrix) -> Result<DecompositionRecord> {
        Ok(DecompositionRecord {
            group: self.group.transform(m)?,
            summands: self.summands.iter().map(|s| s.transform(m)).collect::<Result<_>>()?,
            flags: self.flags.clone(),
        })
    }

    /// Every summand of `self` lies inside some summand of `other`.
    pub fn refines(&self, other: &DecompositionRecord) -> bool {
        self.summands
            .iter()
            .all(|s| other.summands.iter().any(|t| t.span().contains_subspace(s.span())))
    }
}

fn flag_for(s: &GroupRep) -> SummandFlag {
    if s.rank() == 1 {
        SummandFlag::Rank1
    } else if crate::strong::typeset_obstruction_certificate(s).is_some() {
        SummandFlag::IndecomposableCertified
    } else {
        SummandFlag::IndecomposableUnknown
    }
}

impl Serialize for DecompositionRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Summand<'a> {
            group: String,
            rank: usize,
            flag: &'a SummandFlag,
        }
        let v: Vec<Summand> = self
            .summands
            .iter()
            .zip(&self.flags)
            .map(|(g, f)| Summand { group: g.to_string(), rank: g.rank(), flag: f })
            .collect();
        v.serialize(s)
    }
}

/// A basis together with a partition of its positions.
#[derive(Clone, Debug)]
pub struct PartitionRecord {
    basis: BasisRecord,
    blocks: Vec<Vec<usize>>,
}

impl PartitionRecord {
    pub fn new(basis: BasisRecord, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = basis.len();
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in b {
                if i >= n {
                    return Err(Error::InvalidPartition(format!("position {} out of range", i + 1)));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("position {} repeated", i + 1)));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("position {} missing", i + 1)));
        }
        Ok(PartitionRecord { basis, blocks })
    }

    pub fn basis(&self) -> &BasisRecord {
        &self.basis
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_vectors(&self, k: usize) -> Vec<RationalVector> {
        self.blocks[k].iter().map(|&i| self.basis.elements()[i].clone()).collect()
    }

    pub fn block_spans(&self) -> Vec<Subspace> {
        let n = self.basis.group().ambient_dim();
        (0..self.blocks.len()).map(|k| Subspace::span(n, &self.block_vectors(k))).collect()
    }

    /// `(B_i)_*` for every block.
    pub fn purified_blocks(&self) -> Vec<GroupRep> {
        let g = self.basis.group();
        self.block_spans().iter().map(|w| g.purify(w).expect("same ambient")).collect()
    }
}

/// Restricted growth strings of length `n` with at most `max_blocks` blocks,
/// in lexicographic order, as block lists.
pub fn set_partitions(n: usize, max_blocks: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, max_blocks: usize, rgs: &mut Vec<usize>, top: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let mut blocks = vec![Vec::new(); top];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b].push(pos);
            }
            out.push(blocks);
            return;
        }
        let limit = if i == 0 { 1 } else { (top + 1).min(max_blocks) };
        for b in 0..limit {
            rgs.push(b);
            rec(i + 1, n, max_blocks, rgs, top.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 || max_blocks == 0 {
        return out;
    }
    rec(0, n, max_blocks, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Necessary condition for `Σ purify(G, W_i)` to have finite index in `G`:
/// each divisible subspace of `G` is the sum of its intersections with the
/// `W_i`.
pub fn divisible_parts_split(g: &GroupRep, spans: &[&Subspace]) -> bool {
    let classes = g
        .tagged_primes()
        .iter()
        .map(|&p| PrimeClass::Prime(p))
        .chain(std::iter::once(PrimeClass::All));
    for class in classes {
        let d = g.divisible_subspace(class);
        if d.dim() == 0 {
            continue;
        }
        let mut acc = Subspace::zero(g.ambient_dim());
        for w in spans {
            acc = acc.sum(&w.intersect(d).expect("same ambient")).expect("same ambient");
        }
        if acc.dim() != d.dim() {
            return false;
        }
    }
    true
}

/// Whether the pure subgroups reconstitute `G` exactly.
pub(crate) fn splits_exactly(g: &GroupRep, parts: &[&GroupRep]) -> bool {
    let sum = GroupRep::sum(g.ambient_dim(), parts.iter().copied()).expect("same ambient");
    g.is_subgroup_of(&sum)
}

pub fn check_splitting_partition(p: &PartitionRecord) -> (bool, Option<DecompositionRecord>) {
    let g = p.basis().group();
    let spans = p.block_spans();
    let refs: Vec<&Subspace> = spans.iter().collect();
    if !divisible_parts_split(g, &refs) {
        return (false, None);
    }
    let parts = p.purified_blocks();
    let prefs: Vec<&GroupRep> = parts.iter().collect();
    if splits_exactly(g, &prefs) {
        (true, Some(DecompositionRecord::with_default_flags(g.clone(), parts)))
    } else {
        (false, None)
    }
}

/// All proper splitting partitions with at most `max_blocks` blocks.
pub fn enumerate_splitting_partitions(
    basis: &BasisRecord,
    max_blocks: usize,
    rank_limit: usize,
) -> Result<Vec<(PartitionRecord, DecompositionRecord)>> {
    let n = basis.len();
    if n > rank_limit {
        return Err(Error::RankLimit { rank: n, limit: rank_limit });
    }
    let partitions: Vec<_> = set_partitions(n, max_blocks).into_iter().filter(|b| b.len() >= 2).collect();
    Ok(partitions
        .into_par_iter()
        .filter_map(|blocks| {
            let p = PartitionRecord::new(basis.clone(), blocks).expect("generated partitions are valid");
            match check_splitting_partition(&p) {
                (true, Some(d)) => Some((p, d)),
                _ => None,
            }
        })
        .collect())
}

/// Integer combinations of the generators with coefficients in `[-h, h]`,
/// reduced to primitive directions, in order of height then lexicographic
/// coefficient order. The first occurrence of each direction is kept.
pub fn candidate_lines(g: &GroupRep, height: u32) -> Vec<RationalVector> {
    let gens: Vec<&RationalVector> = g.generators().iter().map(|x| &x.vector).collect();
    let k = gens.len();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let h = height as i64;
    if k == 0 {
        return out;
    }
    for t in 1..=h {
        let mut c = vec![-t; k];
        'outer: loop {
            let max = c.iter().map(|x| x.abs()).max().unwrap_or(0);
            let first = c.iter().find(|x| **x != 0).copied().unwrap_or(0);
            if max == t && first > 0 {
                let mut v = RationalVector::zeros(g.ambient_dim());
                for (ci, gi) in c.iter().zip(&gens) {
                    if *ci != 0 {
                        v = &v + &gi.scale(&Rational::from_integer((*ci).into()));
                    }
                }
                if !v.is_zero() {
                    let (_, u) = v.primitive_decomposition();
                    if seen.insert(u.clone()) {
                        out.push(u);
                    }
                }
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if c[i] < t {
                    c[i] += 1;
                    for x in c.iter_mut().skip(i + 1) {
                        *x = -t;
                    }
                    continue 'outer;
                }
            }
        }
    }
    out
}

/// `k`-subsets of `0..n` in colexicographic order: every subset of `0..m`
/// comes before any subset containing `m`, so a truncated enumeration over a
/// longer candidate list still covers the shorter one first.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let i = (0..k).find(|&i| {
            let cap = if i + 1 < k { self.idx[i + 1] } else { self.n };
            self.idx[i] + 1 < cap
        });
        match i {
            Some(i) => {
                self.idx[i] += 1;
                for j in 0..i {
                    self.idx[j] = j;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// Pure hulls of subspaces, memoised by canonical basis.
pub(crate) struct PurifyCache<'a> {
    group: &'a GroupRep,
    map: Mutex<HashMap<Vec<RationalVector>, GroupRep>>,
}

impl<'a> PurifyCache<'a> {
    pub(crate) fn new(group: &'a GroupRep) -> Self {
        PurifyCache { group, map: Mutex::new(HashMap::new()) }
    }

    pub(crate) fn get(&self, w: &Subspace) -> GroupRep {
        let key = w.basis().to_vec();
        if let Some(g) = self.map.lock().expect("cache lock").get(&key) {
            return g.clone();
        }
        let g = self.group.purify(w).expect("same ambient");
        self.map.lock().expect("cache lock").insert(key, g.clone());
        g
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSearch {
    pub decompositions: Vec<DecompositionRecord>,
    pub height: u32,
    pub candidate_lines: usize,
    pub bases_examined: usize,
    /// False when the basis cap cut the search short.
    pub exhaustive: bool,
}

/// Finest splitting partitions of `basis`, as decompositions with at least
/// two summands.
fn finest_splittings(g: &GroupRep, elems: &[RationalVector], cache: &PurifyCache, max_blocks: usize) -> Vec<DecompositionRecord> {
    let n = g.ambient_dim();
    let mut splitting: Vec<(Vec<Vec<usize>>, Vec<GroupRep>)> = Vec::new();
    for blocks in set_partitions(elems.len(), max_blocks) {
        if blocks.len() < 2 {
            continue;
        }
        let spans: Vec<Subspace> = blocks
            .iter()
            .map(|b| Subspace::span(n, &b.iter().map(|&i| elems[i].clone()).collect::<Vec<_>>()))
            .collect();
        let refs: Vec<&Subspace> = spans.iter().collect();
        if !divisible_parts_split(g, &refs) {
            continue;
        }
        let parts: Vec<GroupRep> = spans.iter().map(|w| cache.get(w)).collect();
        let prefs: Vec<&GroupRep> = parts.iter().collect();
        if splits_exactly(g, &prefs) {
            splitting.push((blocks, parts));
        }
    }
    let refines = |a: &Vec<Vec<usize>>, b: &Vec<Vec<usize>>| {
        a.len() > b.len() && a.iter().all(|x| b.iter().any(|y| x.iter().all(|i| y.contains(i))))
    };
    splitting
        .iter()
        .filter(|(p, _)| !splitting.iter().any(|(q, _)| refines(q, p)))
        .map(|(_, parts)| DecompositionRecord::with_default_flags(g.clone(), parts.clone()))
        .collect()
}

/// Bounded search for decompositions of `G` coming from splitting partitions
/// of the given bases and of bases made of candidate lines. Only the finest
/// decompositions found are returned. An empty result is not a proof of
/// indecomposability.
pub fn complete_decomposition_search(
    g: &GroupRep,
    given: &[BasisRecord],
    height: u32,
    max_bases: usize,
) -> Result<DecompositionSearch> {
    let r = g.rank();
    if r > DEFAULT_RANK_LIMIT {
        return Err(Error::RankLimit { rank: r, limit: DEFAULT_RANK_LIMIT });
    }
    let lines = candidate_lines(g, height);
    let cache = PurifyCache::new(g);
    let mut bases: Vec<Vec<RationalVector>> = given.iter().map(|b| b.elements().to_vec()).collect();
    let mut exhaustive = true;
    if r >= 2 {
        for combo in Combinations::new(lines.len(), r) {
            if bases.len() >= max_bases + given.len() {
                exhaustive = false;
                break;
            }
            let elems: Vec<RationalVector> = combo.iter().map(|&i| lines[i].clone()).collect();
            if Subspace::span(g.ambient_dim(), &elems).dim() == r {
                bases.push(elems);
            }
        }
    }
    let found: Vec<Vec<DecompositionRecord>> =
        bases.par_iter().map(|elems| finest_splittings(g, elems, &cache, r)).collect();
    let mut seen = std::collections::HashSet::new();
    let mut all = Vec::new();
    for d in found.into_iter().flatten() {
        if seen.insert(d.key()) {
            all.push(d);
        }
    }
    let finest: Vec<DecompositionRecord> = all
        .iter()
        .filter(|d| !all.iter().any(|e| e.summands.len() > d.summands.len() && e.refines(d)))
        .cloned()
        .collect();
    Ok(DecompositionSearch {
        decompositions: finest,
        height,
        candidate_lines: lines.len(),
        bases_examined: bases.len(),
        exhaustive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    /// `pairing[i]` is the summand of the second decomposition matched to
    /// summand `i` of the first.
    Yes { pairing: Vec<usize> },
    No { reason: String },
    Unknown { reason: String },
}

fn rank_one_class(s: &GroupRep) -> PrimeSet {
    s.element_type(&s.generators()[0].vector)
        .expect("generator is a member")
        .divisible_primes()
        .clone()
}

pub fn decompositions_isomorphic(d1: &DecompositionRecord, d2: &DecompositionRecord) -> Result<IsoVerdict> {
    if !d1.group.equals(&d2.group) {
        return Err(Error::DifferentGroups);
    }
    let mut r1: Vec<usize> = d1.summands.iter().map(GroupRep::rank).collect();
    let mut r2: Vec<usize> = d2.summands.iter().map(GroupRep::rank).collect();
    r1.sort_unstable();
    r2.sort_unstable();
    if r1 != r2 {
        return Ok(IsoVerdict::No { reason: format!("summand ranks differ: {r1:?} vs {r2:?}") });
    }
    let classes = |d: &DecompositionRecord| -> Vec<Option<PrimeSet>> {
        d.summands.iter().map(|s| (s.rank() == 1).then(|| rank_one_class(s))).collect()
    };
    let c1 = classes(d1);
    let c2 = classes(d2);
    let mut t1: Vec<&PrimeSet> = c1.iter().flatten().collect();
    let mut t2: Vec<&PrimeSet> = c2.iter().flatten().collect();
    t1.sort();
    t2.sort();
    if t1 != t2 {
        let f = |t: &[&PrimeSet]| t.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
        return Ok(IsoVerdict::No {
            reason: format!("rank-1 summand types differ: [{}] vs [{}]", f(&t1), f(&t2)),
        });
    }
    let mut used = vec![false; d2.summands.len()];
    let mut pairing = Vec::with_capacity(d1.summands.len());
    for (i, s) in d1.summands.iter().enumerate() {
        let j = (0..d2.summands.len()).find(|&j| {
            !used[j]
                && d2.summands[j].rank() == s.rank()
                && match &c1[i] {
                    Some(t) => c2[j].as_ref() == Some(t),
                    None => s.equals(&d2.summands[j]),
                }
        });
        match j {
            Some(j) => {
                used[j] = true;
                pairing.push(j);
            }
            None => {
                return Ok(IsoVerdict::Unknown {
                    reason: format!("no certified isomorphism for summand {} of rank {}", i + 1, s.rank()),
                })
            }
        }
    }
    Ok(IsoVerdict::Yes { pairing })
}

/// `true` iff `M` is invertible and `G·M = G`.
pub fn automorphism_check(g: &GroupRep, m: &RationalMatrix) -> Result<bool> {
    let n = g.ambient_dim();
    if m.shape() != (n, n) {
        return Err(Error::AmbientMismatch { left: n, right: m.shape().0 });
    }
    if m.determinant().is_zero() {
        return Err(Error::Singular);
    }
    Ok(g.transform(m)?.equals(g))
}

/// Linear map sending each summand of `d1` onto its partner in `d2`
/// (rank 1: normalised generator to normalised generator; higher rank:
/// identity on equal summands), identity on a complement of `span(G)`.
pub fn automorphism_from_summand_isos(
    d1: &DecompositionRecord,
    d2: &DecompositionRecord,
    pairing: &[usize],
) -> Result<RationalMatrix> {
    let g = &d1.group;
    let n = g.ambient_dim();
    if pairing.len() != d1.summands.len() {
        return Err(Error::InvalidPartition("pairing length differs from summand count".into()));
    }
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for (i, &j) in pairing.iter().enumerate() {
        let a = &d1.summands[i];
        let b = d2.summands.get(j).ok_or(Error::NotAutomorphism)?;
        if a.rank() != b.rank() {
            return Err(Error::NotAutomorphism);
        }
        if a.rank() == 1 {
            src.push(a.simplified().generators()[0].vector.clone());
            dst.push(b.simplified().generators()[0].vector.clone());
        } else {
            if !a.equals(b) {
                return Err(Error::NotAutomorphism);
            }
            src.extend(a.span().basis().iter().cloned());
            dst.extend(a.span().basis().iter().cloned());
        }
    }
    let mut k = src.clone();
    for i in 0..n {
        let e = RationalVector::unit(n, i);
        k.push(e.clone());
        if Subspace::span(n, &k).dim() == k.len() {
            src.push(e.clone());
            dst.push(e);
        } else {
            k.pop();
        }
    }
    if src.len() != n {
        return Err(Error::SpanOverlap);
    }
    let x = RationalMatrix::from_rows(n, src);
    let y = RationalMatrix::from_rows(n, dst);
    let m = x.inverse().ok_or(Error::SpanOverlap)?.mul(&y);
    if automorphism_check(g, &m)? {
        Ok(m)
    } else {
        Err(Error::NotAutomorphism)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Generator;

    fn vi(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn g1() -> GroupRep {
        GroupRep::new(2, vec![Generator::plain(vi(&[1, 0])), Generator::new(vi(&[0, 1]), PrimeSet::All)]).unwrap()
    }

    fn g2() -> GroupRep {
        GroupRep::new(
            2,
            vec![
                Generator::new(vi(&[1, 0]), PrimeSet::single(2)),
                Generator::new(vi(&[0, 1]), PrimeSet::single(3)),
                Generator::new(vi(&[1, 1]), PrimeSet::single(5)),
            ],
        )
        .unwrap()
    }

    fn g3() -> GroupRep {
        GroupRep::new(
            2,
            vec![
                Generator::new(vi(&[1, 0]), PrimeSet::single(3)),
                Generator::new(vi(&[0, 1]), PrimeSet::single(5)),
                Generator::plain(RationalVector::from_pairs(&[(1, 2), (1, 2)])),
            ],
        )
        .unwrap()
    }

    fn z(n: usize) -> GroupRep {
        GroupRep::free(n, &(0..n).map(|i| RationalVector::unit(n, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rgs_order() {
        let p = set_partitions(3, 3);
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], vec![vec![0, 1, 2]]);
        assert_eq!(p[4], vec![vec![0], vec![1], vec![2]]);
        assert_eq!(set_partitions(4, 2).len(), 8);
        assert_eq!(set_partitions(5, 5).len(), 52);
    }

    #[test]
    fn combinations_in_order() {
        let c: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[2], vec![1, 2]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn splitting_examples() {
        let b1 = BasisRecord::new(&g1(), vec![vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        let p = PartitionRecord::new(b1.clone(), vec![vec![0], vec![1]]).unwrap();
        let (ok, d) = check_splitting_partition(&p);
        assert!(ok);
        assert!(d.unwrap().sum().equals(&g1()));
        let b2 = BasisRecord::new(&g1(), vec![vi(&[1, 0]), vi(&[1, 1])]).unwrap();
        let p = PartitionRecord::new(b2.clone(), vec![vec![0], vec![1]]).unwrap();
        assert!(!check_splitting_partition(&p).0);
        let b = BasisRecord::new(&g3(), vec![vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        let p = PartitionRecord::new(b, vec![vec![0], vec![1]]).unwrap();
        assert!(!check_splitting_partition(&p).0);

        assert_eq!(enumerate_splitting_partitions(&b1, 2, 10).unwrap().len(), 1);
        assert!(enumerate_splitting_partitions(&b2, 2, 10).unwrap().is_empty());
        let b = BasisRecord::new(&z(3), (0..3).map(|i| RationalVector::unit(3, i)).collect()).unwrap();
        assert_eq!(enumerate_splitting_partitions(&b, 3, 10).unwrap().len(), 4);
        assert!(matches!(enumerate_splitting_partitions(&b, 3, 2), Err(Error::RankLimit { .. })));
    }

    #[test]
    fn invalid_partitions() {
        let b = BasisRecord::new(&g1(), vec![vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        assert!(PartitionRecord::new(b.clone(), vec![vec![0]]).is_err());
        assert!(PartitionRecord::new(b.clone(), vec![vec![0, 1], vec![1]]).is_err());
        assert!(PartitionRecord::new(b, vec![vec![0, 2], vec![1]]).is_err());
    }

    #[test]
    fn searches() {
        let s = complete_decomposition_search(&g1(), &[], 2, DEFAULT_MAX_BASES).unwrap();
        assert!(!s.decompositions.is_empty());
        let target = DecompositionRecord::with_default_flags(
            g1(),
            vec![GroupRep::free(2, &[vi(&[1, 0])]).unwrap(), g1().divisible_part(PrimeClass::All)],
        );
        assert!(s.decompositions.iter().any(|d| d.key() == target.key()));
        let s = complete_decomposition_search(&z(3), &[], 1, DEFAULT_MAX_BASES).unwrap();
        assert!(s.decompositions.iter().any(|d| d.summands().len() == 3));
        assert!(s.decompositions.iter().all(|d| d.summands().len() == 3));
        let s = complete_decomposition_search(&g2(), &[], 3, DEFAULT_MAX_BASES).unwrap();
        assert!(s.decompositions.is_empty());
        assert!(s.exhaustive);
    }

    #[test]
    fn isomorphism_of_decompositions() {
        let s = complete_decomposition_search(&g1(), &[], 2, DEFAULT_MAX_BASES).unwrap();
        let d = &s.decompositions;
        assert!(d.len() >= 2);
        for a in d {
            for b in d {
                match decompositions_isomorphic(a, b).unwrap() {
                    IsoVerdict::Yes { pairing } => {
                        let m = automorphism_from_summand_isos(a, b, &pairing).unwrap();
                        let image = a.transform(&m).unwrap();
                        assert_eq!(image.key(), b.key());
                    }
                    v => panic!("expected Yes, got {v:?}"),
                }
            }
        }
        let x = GroupRep::new(2, vec![Generator::new(vi(&[1, 0]), PrimeSet::single(2))]).unwrap();
        let y = GroupRep::new(2, vec![Generator::new(vi(&[0, 1]), PrimeSet::single(3))]).unwrap();
        let g = GroupRep::sum(2, [&x, &y]).unwrap();
        let d1 = DecompositionRecord::with_default_flags(g.clone(), vec![x.clone(), y.clone()]);
        let x2 = GroupRep::new(2, vec![Generator::new(vi(&[1, 0]), PrimeSet::single(3))]).unwrap();
        let y2 = GroupRep::new(2, vec![Generator::new(vi(&[0, 1]), PrimeSet::single(2))]).unwrap();
        let g2 = GroupRep::sum(2, [&x2, &y2]).unwrap();
        let d2 = DecompositionRecord::with_default_flags(g2, vec![x2, y2]);
        assert_eq!(decompositions_isomorphic(&d1, &d2).unwrap_err(), Error::DifferentGroups);
        let fake = DecompositionRecord::with_default_flags(g.clone(), vec![y.clone(), y]);
        assert!(matches!(decompositions_isomorphic(&d1, &fake).unwrap(), IsoVerdict::No { .. }));
    }

    #[test]
    fn automorphisms() {
        let id = RationalMatrix::identity(2);
        assert!(automorphism_check(&g3(), &id).unwrap());
        let swap = RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(automorphism_check(&z(2), &swap).unwrap());
        let x = GroupRep::new(
            2,
            vec![Generator::new(vi(&[1, 0]), PrimeSet::single(2)), Generator::new(vi(&[0, 1]), PrimeSet::single(3))],
        )
        .unwrap();
        assert!(!automorphism_check(&x, &swap).unwrap());
        let half = RationalMatrix::diagonal(&[Rational::from_integer(1.into()), crate::linalg::rat(1, 2)]);
        assert!(automorphism_check(&g1(), &half).unwrap());
        let sing = RationalMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(automorphism_check(&g1(), &sing).unwrap_err(), Error::Singular);
    }
}
