//! Jónsson bases (finite-index strong decompositions with pure summands),
//! their quotients, lifting of quotient decompositions, and regulating search.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{
    automorphism_check, candidate_lines, divisible_parts_split, set_partitions, splits_exactly, Combinations,
    DecompositionRecord, PurifyCache, DEFAULT_RANK_LIMIT,
};
use crate::error::{Error, Result};
use crate::group::{FiniteQuotient, GroupRep, QuotientDescription};
use crate::linalg::rational::RationalVector;
use crate::linalg::{Rational, RationalMatrix, Subspace};
use crate::primes::PrimeSet;
use crate::strong::typeset_obstruction_certificate;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JonssonFlag {
    Rank1,
    SiCertified,
    Asserted,
}

fn flag_for(s: &GroupRep) -> JonssonFlag {
    if s.rank() == 1 {
        JonssonFlag::Rank1
    } else if typeset_obstruction_certificate(s).is_some() {
        JonssonFlag::SiCertified
    } else {
        JonssonFlag::Asserted
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JonssonBasis {
    group: GroupRep,
    summands: Vec<GroupRep>,
    flags: Vec<JonssonFlag>,
    quotient: FiniteQuotient,
}

/// Rank and the divisible-prime sets of the distinguished types of a summand;
/// equal for quasi-isomorphic summands.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct SummandInvariant {
    pub rank: usize,
    pub types: Vec<PrimeSet>,
}

impl JonssonBasis {
    /// Checks directness, full span and finite index of `summands` in `g`,
    /// without purifying them.
    pub fn from_subgroups(g: &GroupRep, summands: Vec<GroupRep>) -> Result<Self> {
        let n = g.ambient_dim();
        let mut total = Subspace::zero(n);
        let mut dims = 0;
        for s in &summands {
            if s.ambient_dim() != n {
                return Err(Error::AmbientMismatch { left: n, right: s.ambient_dim() });
            }
            if !s.is_subgroup_of(g) {
                return Err(Error::NotSubgroup);
            }
            dims += s.rank();
            total = total.sum(s.span())?;
        }
        if dims != total.dim() || &total != g.span() {
            return Err(Error::SpanOverlap);
        }
        let sum = GroupRep::sum(n, &summands)?;
        let quotient = match g.index_and_quotient(&sum)? {
            QuotientDescription::Finite(q) => q,
            QuotientDescription::InfiniteTorsion(w) => return Err(Error::InfiniteIndex(w)),
        };
        let flags = summands.iter().map(flag_for).collect();
        Ok(JonssonBasis { group: g.clone(), summands, flags, quotient })
    }

    pub fn group(&self) -> &GroupRep {
        &self.group
    }

    pub fn summands(&self) -> &[GroupRep] {
        &self.summands
    }

    pub fn flags(&self) -> &[JonssonFlag] {
        &self.flags
    }

    pub fn quotient(&self) -> &FiniteQuotient {
        &self.quotient
    }

    pub fn index(&self) -> BigInt {
        self.quotient.order()
    }

    /// `A = ⊕ A_i`.
    pub fn sum(&self) -> GroupRep {
        GroupRep::sum(self.group.ambient_dim(), &self.summands).expect("same ambient")
    }

    pub fn summands_are_pure(&self) -> bool {
        self.summands.iter().all(|s| self.group.purify(s.span()).is_ok_and(|p| p.equals(s)))
    }

    pub fn invariants(&self) -> Vec<SummandInvariant> {
        let mut out: Vec<SummandInvariant> = self
            .summands
            .iter()
            .map(|s| {
                let types = if s.rank() == 1 {
                    let t = s.element_type(&s.generators()[0].vector).expect("generator is a member");
                    vec![t.divisible_primes().clone()]
                } else if let Some(c) = typeset_obstruction_certificate(s) {
                    let mut v: Vec<PrimeSet> = c.types.iter().map(|t| t.divisible_primes().clone()).collect();
                    v.push(c.generic.divisible_primes().clone());
                    v.sort();
                    v
                } else {
                    Vec::new()
                };
                SummandInvariant { rank: s.rank(), types }
            })
            .collect();
        out.sort();
        out
    }

    /// `A·α` for an automorphism `α` of `G`.
    pub fn transform(&self, alpha: &RationalMatrix) -> Result<JonssonBasis> {
        let summands = self.summands.iter().map(|s| s.transform(alpha)).collect::<Result<Vec<_>>>()?;
        JonssonBasis::from_subgroups(&self.group, summands)
    }

    /// The Jónsson basis of `G ⊕ H` made of both lists of summands.
    pub fn direct_sum(&self, other: &JonssonBasis) -> Result<JonssonBasis> {
        let (n1, n2) = (self.group.ambient_dim(), other.group.ambient_dim());
        let mut summands: Vec<GroupRep> =
            self.summands.iter().map(|s| s.direct_sum(&GroupRep::zero(n2))).collect();
        summands.extend(other.summands.iter().map(|s| GroupRep::zero(n1).direct_sum(s)));
        JonssonBasis::from_subgroups(&self.group.direct_sum(&other.group), summands)
    }
}

/// Purifies each candidate in `G` and checks that the result is a Jónsson basis.
pub fn jonsson_basis_from_summands(g: &GroupRep, candidates: &[GroupRep]) -> Result<JonssonBasis> {
    let summands = candidates.iter().map(|c| g.purify(c.span())).collect::<Result<Vec<_>>>()?;
    JonssonBasis::from_subgroups(g, summands)
}

#[derive(Clone, Debug, Serialize)]
pub struct Splitting {
    /// Blocks of summand indices.
    pub grouping: Vec<Vec<usize>>,
    pub decomposition: DecompositionRecord,
}

fn grouping_splits(a: &JonssonBasis, blocks: &[Vec<usize>]) -> Option<Vec<GroupRep>> {
    let g = a.group();
    let n = g.ambient_dim();
    let spans: Vec<Subspace> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .fold(Subspace::zero(n), |acc, &i| acc.sum(a.summands[i].span()).expect("same ambient"))
        })
        .collect();
    let refs: Vec<&Subspace> = spans.iter().collect();
    if !divisible_parts_split(g, &refs) {
        return None;
    }
    let parts: Vec<GroupRep> = spans.iter().map(|w| g.purify(w).expect("same ambient")).collect();
    let prefs: Vec<&GroupRep> = parts.iter().collect();
    splits_exactly(g, &prefs).then_some(parts)
}

fn check_summand_count(a: &JonssonBasis) -> Result<usize> {
    let t = a.summands.len();
    if t > DEFAULT_RANK_LIMIT {
        return Err(Error::RankLimit { rank: t, limit: DEFAULT_RANK_LIMIT });
    }
    Ok(t)
}

/// Groupings of the summands into between 2 and `max_blocks` blocks whose
/// purified block sums reconstitute `G`.
pub fn splitting_decompositions_of(a: &JonssonBasis, max_blocks: usize) -> Result<Vec<Splitting>> {
    let t = check_summand_count(a)?;
    let groupings: Vec<_> = set_partitions(t, max_blocks).into_iter().filter(|b| b.len() >= 2).collect();
    Ok(groupings
        .into_par_iter()
        .filter_map(|grouping| {
            let parts = grouping_splits(a, &grouping)?;
            let decomposition = DecompositionRecord::with_default_flags(a.group().clone(), parts);
            Some(Splitting { grouping, decomposition })
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LiftOutcome {
    Lifted { grouping: Vec<Vec<usize>>, decomposition: DecompositionRecord },
    /// No grouping of the summands induces the decomposition, so it does not lift.
    Refused { groupings_examined: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    /// Generator images of each block, in invariant-factor coordinates.
    #[serde(serialize_with = "serialize_blocks")]
    pub blocks: Vec<Vec<Vec<BigInt>>>,
    pub outcome: LiftOutcome,
}

fn serialize_blocks<S: serde::Serializer>(blocks: &[Vec<Vec<BigInt>>], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<Vec<String>>> =
        blocks.iter().map(|b| b.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect()).collect();
    serde::Serialize::serialize(&text, s)
}

impl LiftReport {
    pub fn lifted(&self) -> bool {
        matches!(self.outcome, LiftOutcome::Lifted { .. })
    }
}

/// Images in `G/A` of the generators of a subgroup of `G`.
pub fn image_generators(a: &JonssonBasis, h: &GroupRep) -> Vec<Vec<BigInt>> {
    h.generators()
        .iter()
        .map(|x| a.quotient().image(&x.vector).expect("subgroup of the group"))
        .collect()
}

/// Assignments of `t` items to `k` labelled blocks with no block empty, in
/// lexicographic order.
fn surjective_assignments(t: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if k == 0 || t < k {
        return out;
    }
    let mut label = vec![0usize; t];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in label.iter().enumerate() {
            blocks[b].push(i);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        let mut i = t;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if label[i] + 1 < k {
                label[i] += 1;
                for x in label.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Searches groupings `B_1, …, B_k` of the summands with
/// `G = ⊕ (B_i)_*` and `((B_i)_* + A)/A = U_i`.
pub fn lift_blocks(g: &GroupRep, a: &JonssonBasis, blocks: &[Vec<Vec<BigInt>>]) -> Result<LiftReport> {
    if !g.equals(a.group()) {
        return Err(Error::DifferentGroups);
    }
    let q = a.quotient();
    let k = q.invariant_factors.len();
    if blocks.iter().flatten().any(|x| x.len() != k) {
        return Err(Error::InvalidQuotientDecomposition(format!("images must have {k} coordinates")));
    }
    if !q.is_direct_decomposition(blocks) {
        return Err(Error::InvalidQuotientDecomposition("blocks do not form a direct decomposition".into()));
    }
    let t = check_summand_count(a)?;
    let assignments = surjective_assignments(t, blocks.len());
    let examined = assignments.len();
    let found = assignments.into_par_iter().find_map_first(|grouping| {
        let parts = grouping_splits(a, &grouping)?;
        let matches = parts.iter().zip(blocks).all(|(p, u)| q.same_subgroup(&image_generators(a, p), u));
        matches.then_some((grouping, parts))
    });
    let outcome = match found {
        Some((grouping, parts)) => {
            LiftOutcome::Lifted { grouping, decomposition: DecompositionRecord::with_default_flags(g.clone(), parts) }
        }
        None => LiftOutcome::Refused { groupings_examined: examined },
    };
    Ok(LiftReport { blocks: blocks.to_vec(), outcome })
}

pub fn lift_quotient_decomposition(
    g: &GroupRep,
    a: &JonssonBasis,
    u: &[Vec<BigInt>],
    w: &[Vec<BigInt>],
) -> Result<LiftReport> {
    lift_blocks(g, a, &[u.to_vec(), w.to_vec()])
}

/// Liftable decompositions of `G/A` that admit no liftable refinement, each
/// with the splitting of `G` that induces it.
pub fn unrefinable_quotient_decompositions(a: &JonssonBasis) -> Result<Vec<LiftReport>> {
    let t = check_summand_count(a)?;
    let g = a.group();
    let splitting: Vec<(Vec<Vec<usize>>, Vec<GroupRep>)> = set_partitions(t, t.max(1))
        .into_par_iter()
        .filter_map(|grouping| {
            if grouping.len() == 1 {
                return Some((grouping, vec![g.clone()]));
            }
            grouping_splits(a, &grouping).map(|parts| (grouping, parts))
        })
        .collect();
    let refines = |x: &Vec<Vec<usize>>, y: &Vec<Vec<usize>>| {
        x.len() > y.len() && x.iter().all(|b| y.iter().any(|c| b.iter().all(|i| c.contains(i))))
    };
    Ok(splitting
        .iter()
        .filter(|(p, _)| !splitting.iter().any(|(q, _)| refines(q, p)))
        .map(|(grouping, parts)| LiftReport {
            blocks: parts.iter().map(|p| image_generators(a, p)).collect(),
            outcome: LiftOutcome::Lifted {
                grouping: grouping.clone(),
                decomposition: DecompositionRecord::with_default_flags(g.clone(), parts.clone()),
            },
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct RegulatingSearch {
    pub best: JonssonBasis,
    #[serde(serialize_with = "crate::serde_util::big")]
    pub index: BigInt,
    pub height: u32,
    pub bases_examined: usize,
    /// True when every basis of candidate lines up to the height was tried.
    pub exhaustive: bool,
}

/// Least-index Jónsson basis among those whose summands are purified spans of
/// blocks of at most two candidate lines (rank-2 blocks only when certified
/// strongly indecomposable).
pub fn regulating_search(g: &GroupRep, height: u32, max_bases: usize) -> Result<RegulatingSearch> {
    let r = g.rank();
    if r > DEFAULT_RANK_LIMIT {
        return Err(Error::RankLimit { rank: r, limit: DEFAULT_RANK_LIMIT });
    }
    if r == 0 {
        let best = JonssonBasis::from_subgroups(g, Vec::new())?;
        return Ok(RegulatingSearch { best, index: BigInt::one(), height, bases_examined: 0, exhaustive: true });
    }
    let n = g.ambient_dim();
    let lines = candidate_lines(g, height);
    let mut bases = Vec::new();
    let mut exhaustive = true;
    for combo in Combinations::new(lines.len(), r) {
        if bases.len() >= max_bases {
            exhaustive = false;
            break;
        }
        let elems: Vec<RationalVector> = combo.iter().map(|&i| lines[i].clone()).collect();
        if Subspace::span(n, &elems).dim() == r {
            bases.push(elems);
        }
    }
    let partitions: Vec<Vec<Vec<usize>>> =
        set_partitions(r, r).into_iter().filter(|p| p.iter().all(|b| b.len() <= 2)).collect();
    let cache = PurifyCache::new(g);
    let best = bases
        .par_iter()
        .enumerate()
        .filter_map(|(bi, elems)| {
            let mut local: Option<(BigInt, usize, usize, Vec<GroupRep>)> = None;
            for (pi, blocks) in partitions.iter().enumerate() {
                let spans: Vec<Subspace> = blocks
                    .iter()
                    .map(|b| Subspace::span(n, &b.iter().map(|&i| elems[i].clone()).collect::<Vec<_>>()))
                    .collect();
                let refs: Vec<&Subspace> = spans.iter().collect();
                if !divisible_parts_split(g, &refs) {
                    continue;
                }
                let parts: Vec<GroupRep> = spans.iter().map(|w| cache.get(w)).collect();
                if parts.iter().any(|p| p.rank() == 2 && typeset_obstruction_certificate(p).is_none()) {
                    continue;
                }
                let sum = GroupRep::sum(n, &parts).expect("same ambient");
                let Ok(QuotientDescription::Finite(q)) = g.index_and_quotient(&sum) else { continue };
                let idx = q.order();
                if local.as_ref().is_none_or(|(b, ..)| idx < *b) {
                    local = Some((idx, bi, pi, parts));
                }
            }
            local
        })
        .min_by(|x, y| (&x.0, x.1, x.2).cmp(&(&y.0, y.1, y.2)));
    let (index, _, _, parts) = best.ok_or(Error::NoJonssonBasis)?;
    let best = JonssonBasis::from_subgroups(g, parts)?;
    Ok(RegulatingSearch { best, index, height, bases_examined: bases.len(), exhaustive })
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    pub transported: JonssonBasis,
    /// Row `i` is the image of the `i`-th invariant-factor generator of `G/A`
    /// in the coordinates of `G/Aα`.
    #[serde(serialize_with = "crate::serde_util::big_rows")]
    pub matrix: Vec<Vec<BigInt>>,
    /// `(α − 1)·G ≤ A`, i.e. `g + A ↦ gα + Aα` is the identity.
    pub acts_trivially: bool,
}

fn minus_identity(alpha: &RationalMatrix) -> RationalMatrix {
    let n = alpha.shape().0;
    alpha.add(&RationalMatrix::identity(n).scale(&Rational::from_integer(BigInt::from(-1))))
}

fn require_automorphism(g: &GroupRep, alpha: &RationalMatrix) -> Result<()> {
    if automorphism_check(g, alpha)? {
        Ok(())
    } else {
        Err(Error::NotAutomorphism)
    }
}

pub fn induced_quotient_map(a: &JonssonBasis, alpha: &RationalMatrix) -> Result<InducedMap> {
    let g = a.group();
    require_automorphism(g, alpha)?;
    let transported = a.transform(alpha)?;
    let q = a.quotient();
    let k = q.invariant_factors.len();
    let gens: Vec<&RationalVector> = g.generators().iter().map(|x| &x.vector).collect();
    let mut matrix = Vec::with_capacity(k);
    for i in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[i] = BigInt::one();
        let c = q.express(&e).expect("generator images generate the quotient");
        let mut x = RationalVector::zeros(g.ambient_dim());
        for (cj, v) in c.iter().zip(&gens) {
            if !cj.is_zero() {
                x = &x + &v.scale(&Rational::from_integer(cj.clone()));
            }
        }
        let y = alpha.apply(&x);
        matrix.push(transported.quotient().image(&y).expect("automorphism preserves the group"));
    }
    let acts_trivially = g.transform(&minus_identity(alpha))?.is_subgroup_of(&a.sum());
    Ok(InducedMap { transported, matrix, acts_trivially })
}

/// `(α − 1)/n` maps `G` into `G`, where `n = exp(G/A)`.
pub fn kernel_check(a: &JonssonBasis, alpha: &RationalMatrix) -> Result<bool> {
    let g = a.group();
    require_automorphism(g, alpha)?;
    let n = Rational::from_integer(a.quotient().exponent());
    let m = minus_identity(alpha).scale(&n.recip());
    Ok(g.transform(&m)?.is_subgroup_of(g))
}

#[cfg(test)]
mod tests;
