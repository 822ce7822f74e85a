//! Property SI, the rank-2 typeset certificate, and the bounded search for
//! quasi-decompositions.

use rayon::prelude::*;
use serde::Serialize;

use crate::bases::{pure_hull_sum, BasisRecord};
use crate::decomp::{
    candidate_lines, check_splitting_partition, divisible_parts_split, set_partitions, Combinations,
    DecompositionRecord, PartitionRecord, PurifyCache,
};
use crate::error::{Error, Result};
use crate::group::{GroupRep, PrimeClass, QuotientDescription};
use crate::linalg::rational::{Rational, RationalVector};
use crate::linalg::subspace::Subspace;
use crate::primes::PrimeSet;
use crate::types::DivisibilityType;

pub const DEFAULT_SI_RANK_LIMIT: usize = 8;

/// Certificate that a rank-2 group is strongly indecomposable: lines of at
/// least three different quasi-types beyond the generic one.
#[derive(Clone, Debug, Serialize)]
pub struct TypesetCertificate {
    pub types: Vec<DivisibilityType>,
    /// One element of each listed type.
    pub witnesses: Vec<RationalVector>,
    /// Type of every line outside the listed ones.
    pub generic: DivisibilityType,
}

/// Lines of `span(G)` whose divisible-prime set differs from that of a
/// generic line, together with those sets.
fn special_lines(g: &GroupRep) -> (PrimeSet, Vec<(Subspace, PrimeSet)>) {
    let r = g.rank();
    let mut generic: Vec<u64> = Vec::new();
    let mut lines: Vec<(Subspace, Vec<u64>, bool)> = Vec::new();
    let all = g.divisible_subspace(PrimeClass::All);
    if all.dim() == r {
        return (PrimeSet::All, Vec::new());
    }
    let mut note = |d: &Subspace, p: Option<u64>| {
        if d.dim() == 0 {
            return;
        }
        let idx = match lines.iter().position(|(l, _, _)| l == d) {
            Some(i) => i,
            None => {
                lines.push((d.clone(), Vec::new(), false));
                lines.len() - 1
            }
        };
        match p {
            Some(p) => lines[idx].1.push(p),
            None => lines[idx].2 = true,
        }
    };
    for &p in g.tagged_primes() {
        let d = g.divisible_subspace(PrimeClass::Prime(p));
        if d.dim() == r {
            generic.push(p);
        } else if d.dim() == 1 {
            note(d, Some(p));
        }
    }
    if all.dim() == 1 {
        note(all, None);
    }
    let generic_set = PrimeSet::of(&generic).expect("tagged primes are prime");
    let out = lines
        .into_iter()
        .map(|(l, ps, is_all)| {
            let s = if is_all {
                PrimeSet::All
            } else {
                generic_set.union(&PrimeSet::of(&ps).expect("tagged primes are prime"))
            };
            (l, s)
        })
        .collect();
    (generic_set, out)
}

/// For rank 2 the certificate is exact: it is issued iff `G` has no proper
/// quasi-decomposition. Other ranks return `None`.
pub fn typeset_obstruction_certificate(g: &GroupRep) -> Option<TypesetCertificate> {
    if g.rank() != 2 {
        return None;
    }
    let (generic, lines) = special_lines(g);
    if lines.len() < 3 {
        return None;
    }
    let mut types = Vec::new();
    let mut witnesses = Vec::new();
    for (l, s) in &lines {
        let pure = g.purify(l).expect("same ambient");
        let w = pure.generators()[0].vector.clone();
        types.push(DivisibilityType::new(Rational::from_integer(1.into()), s.clone()).expect("positive"));
        witnesses.push(w);
    }
    Some(TypesetCertificate {
        types,
        witnesses,
        generic: DivisibilityType::new(Rational::from_integer(1.into()), generic).expect("positive"),
    })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SiFailure {
    SplittingPartition { blocks: Vec<Vec<usize>> },
    FiniteQuotient { invariant_factors: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SiVerdict {
    HoldsForThisBasis,
    Fails(SiFailure),
}

#[derive(Clone, Debug, Serialize)]
pub struct SiReport {
    pub basis: Vec<RationalVector>,
    pub hull: DecompositionRecord,
    pub quotient: QuotientDescription,
    pub split_attempts: Vec<(Vec<Vec<usize>>, bool)>,
    pub verdict: SiVerdict,
}

impl SiReport {
    pub fn holds(&self) -> bool {
        matches!(self.verdict, SiVerdict::HoldsForThisBasis)
    }
}

/// Property SI for `((B)_*, G)`: the quotient `G/(B)_*` is infinite and no
/// two-block partition of `B` splits `G`.
pub fn property_si_check(basis: &BasisRecord) -> Result<SiReport> {
    let g = basis.group();
    let k = basis.len();
    if k > DEFAULT_SI_RANK_LIMIT {
        return Err(Error::RankLimit { rank: k, limit: DEFAULT_SI_RANK_LIMIT });
    }
    let hull = pure_hull_sum(basis);
    let quotient = g.index_and_quotient(&hull.sum())?;
    let split_attempts: Vec<(Vec<Vec<usize>>, bool)> = set_partitions(k, 2)
        .into_iter()
        .filter(|b| b.len() == 2)
        .map(|blocks| {
            let p = PartitionRecord::new(basis.clone(), blocks.clone()).expect("generated partitions are valid");
            let ok = check_splitting_partition(&p).0;
            (blocks, ok)
        })
        .collect();
    let verdict = if let Some((blocks, _)) = split_attempts.iter().find(|(_, ok)| *ok) {
        SiVerdict::Fails(SiFailure::SplittingPartition { blocks: blocks.clone() })
    } else if let Some(f) = quotient.finite() {
        SiVerdict::Fails(SiFailure::FiniteQuotient {
            invariant_factors: f.invariant_factors.iter().map(|d| d.to_string()).collect(),
        })
    } else {
        SiVerdict::HoldsForThisBasis
    };
    Ok(SiReport { basis: basis.elements().to_vec(), hull, quotient, split_attempts, verdict })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessSearch {
    /// `G` is not strongly indecomposable: the purified blocks of this
    /// partition have finite index (index 1 means an exact splitting).
    QuasiDecomposition {
        basis: Vec<RationalVector>,
        blocks: Vec<Vec<usize>>,
        #[serde(serialize_with = "crate::serde_util::big")]
        index: num_bigint::BigInt,
        summands: DecompositionRecord,
    },
    NoWitnessFound {
        height: u32,
        bases_examined: usize,
        exhaustive: bool,
    },
}

/// Searches bases made of candidate lines up to `height` and all their
/// two-block partitions for a finite-index purified sum.
pub fn strong_decomposability_witness_search(g: &GroupRep, height: u32, max_bases: usize) -> Result<WitnessSearch> {
    let r = g.rank();
    if r > DEFAULT_SI_RANK_LIMIT {
        return Err(Error::RankLimit { rank: r, limit: DEFAULT_SI_RANK_LIMIT });
    }
    let n = g.ambient_dim();
    let lines = candidate_lines(g, height);
    let mut bases = Vec::new();
    let mut exhaustive = true;
    if r >= 2 {
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
    }
    let partitions: Vec<Vec<Vec<usize>>> = set_partitions(r, 2).into_iter().filter(|b| b.len() == 2).collect();
    let cache = PurifyCache::new(g);
    let hit = bases.par_iter().find_map_first(|elems| {
        partitions.iter().find_map(|blocks| {
            let spans: Vec<Subspace> = blocks
                .iter()
                .map(|b| Subspace::span(n, &b.iter().map(|&i| elems[i].clone()).collect::<Vec<_>>()))
                .collect();
            let refs: Vec<&Subspace> = spans.iter().collect();
            divisible_parts_split(g, &refs).then(|| (elems.clone(), blocks.clone(), spans))
        })
    });
    match hit {
        Some((elems, blocks, spans)) => {
            let parts: Vec<GroupRep> = spans.iter().map(|w| cache.get(w)).collect();
            let sum = GroupRep::sum(n, &parts)?;
            let index = g
                .index_and_quotient(&sum)?
                .index()
                .expect("divisible parts agree, so the index is finite");
            let basis: Vec<RationalVector> = elems
                .iter()
                .map(|u| u.scale(&Rational::from_integer(g.order_modulo(u).expect("line lies in the span"))))
                .collect();
            Ok(WitnessSearch::QuasiDecomposition {
                basis,
                blocks,
                index,
                summands: DecompositionRecord::with_default_flags(g.clone(), parts),
            })
        }
        None => Ok(WitnessSearch::NoWitnessFound { height, bases_examined: bases.len(), exhaustive }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Generator;
    use num_bigint::BigInt;

    fn vi(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn gen(xs: &[i64], p: u64) -> Generator {
        Generator::new(vi(xs), PrimeSet::single(p))
    }

    fn g1() -> GroupRep {
        GroupRep::new(2, vec![Generator::plain(vi(&[1, 0])), Generator::new(vi(&[0, 1]), PrimeSet::All)]).unwrap()
    }

    fn g2() -> GroupRep {
        GroupRep::new(2, vec![gen(&[1, 0], 2), gen(&[0, 1], 3), gen(&[1, 1], 5)]).unwrap()
    }

    fn g3() -> GroupRep {
        GroupRep::new(
            2,
            vec![gen(&[1, 0], 3), gen(&[0, 1], 5), Generator::plain(RationalVector::from_pairs(&[(1, 2), (1, 2)]))],
        )
        .unwrap()
    }

    #[test]
    fn certificates() {
        let c = typeset_obstruction_certificate(&g2()).unwrap();
        let names: Vec<String> = c.types.iter().map(|t| t.to_string()).collect();
        assert_eq!(names, vec!["Z[2]", "Z[3]", "Z[5]"]);
        for (t, w) in c.types.iter().zip(&c.witnesses) {
            assert_eq!(&g2().element_type(w).unwrap(), t);
        }
        assert!(typeset_obstruction_certificate(&g3()).is_none());
        assert!(typeset_obstruction_certificate(&g1()).is_none());
        let z2 = GroupRep::free(2, &[vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        assert!(typeset_obstruction_certificate(&z2).is_none());
    }

    #[test]
    fn si_checks() {
        let b = BasisRecord::new(&g2(), vec![vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        let r = property_si_check(&b).unwrap();
        assert!(r.holds());
        match &r.quotient {
            QuotientDescription::InfiniteTorsion(w) => assert_eq!(w.prime, 5),
            q => panic!("unexpected {q:?}"),
        }
        let b = BasisRecord::new(&g1(), vec![vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        let r = property_si_check(&b).unwrap();
        assert!(matches!(r.verdict, SiVerdict::Fails(SiFailure::SplittingPartition { .. })));
        let b = BasisRecord::new(&g3(), vec![vi(&[1, 0]), vi(&[0, 1])]).unwrap();
        let r = property_si_check(&b).unwrap();
        assert!(matches!(r.verdict, SiVerdict::Fails(SiFailure::FiniteQuotient { .. })));
    }

    #[test]
    fn witness_searches() {
        match strong_decomposability_witness_search(&g3(), 3, 10_000).unwrap() {
            WitnessSearch::QuasiDecomposition { index, blocks, .. } => {
                assert_eq!(index, BigInt::from(2));
                assert_eq!(blocks, vec![vec![0], vec![1]]);
            }
            w => panic!("unexpected {w:?}"),
        }
        match strong_decomposability_witness_search(&g1(), 3, 10_000).unwrap() {
            WitnessSearch::QuasiDecomposition { index, .. } => assert_eq!(index, BigInt::from(1)),
            w => panic!("unexpected {w:?}"),
        }
        assert!(matches!(
            strong_decomposability_witness_search(&g2(), 3, 10_000).unwrap(),
            WitnessSearch::NoWitnessFound { exhaustive: true, .. }
        ));
    }
}
