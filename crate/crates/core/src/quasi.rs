//! Quasi-equality, commensurability, quasi-automorphisms and quasi-splitting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::decomp::{automorphism_check, check_splitting_partition, DecompositionRecord, PartitionRecord};
use crate::error::{Error, Result};
use crate::group::{FiniteQuotient, GroupRep, PrimeClass, QuotientDescription, TorsionWitness};
use crate::linalg::rational::{fmt_rational, int_valuation, RationalVector};
use crate::linalg::{Rational, RationalMatrix};
use crate::primes::prime_divisors;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuasiWitness {
    /// `r·H = G`.
    Strict {
        #[serde(serialize_with = "crate::serde_util::rational")]
        r: Rational,
    },
    /// `a·H ≤ G` and `b·G ≤ H`.
    Commensurable {
        #[serde(serialize_with = "crate::serde_util::big")]
        a: BigInt,
        #[serde(serialize_with = "crate::serde_util::big")]
        b: BigInt,
    },
}

impl QuasiWitness {
    pub fn verify(&self, h: &GroupRep, g: &GroupRep) -> bool {
        match self {
            QuasiWitness::Strict { r } => h.scale(r).is_ok_and(|s| s.equals(g)),
            QuasiWitness::Commensurable { a, b } => {
                let (a, b) = (Rational::from_integer(a.clone()), Rational::from_integer(b.clone()));
                h.scale(&a).is_ok_and(|s| s.is_subgroup_of(g)) && g.scale(&b).is_ok_and(|s| s.is_subgroup_of(h))
            }
        }
    }
}

impl fmt::Display for QuasiWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiWitness::Strict { r } => write!(f, "r = {}", fmt_rational(r)),
            QuasiWitness::Commensurable { a, b } => write!(f, "a = {a}, b = {b}"),
        }
    }
}

/// `p`-height of `x ∈ span(G)` in `G`, possibly negative; `None` if infinite.
fn relative_height(g: &GroupRep, x: &RationalVector, p: u64) -> Option<i64> {
    let o = g.order_modulo(x)?;
    let y = x.scale(&Rational::from_integer(o.clone()));
    let h = g.height(&y, p).ok()??;
    Some(h - int_valuation(&o, p) as i64)
}

fn same_divisible_parts(h: &GroupRep, g: &GroupRep, primes: &[u64]) -> bool {
    primes
        .iter()
        .map(|&p| PrimeClass::Prime(p))
        .chain(std::iter::once(PrimeClass::All))
        .all(|c| h.divisible_subspace(c) == g.divisible_subspace(c))
}

fn weight(r: &Rational) -> BigInt {
    r.numer().abs() * r.denom()
}

/// Every positive `r` that could satisfy `r·H = G`, ordered by
/// `numerator·denominator` and then by value. Empty when none can.
fn strict_candidates(h: &GroupRep, g: &GroupRep) -> Vec<Rational> {
    if h.ambient_dim() != g.ambient_dim() || h.span() != g.span() {
        return Vec::new();
    }
    let mut primes: Vec<u64> = h.tagged_primes().iter().chain(g.tagged_primes()).copied().collect();
    for (x, y) in [(h, g), (g, h)] {
        for v in x.lattice_hull() {
            if let Some(o) = y.order_modulo(v) {
                primes.extend(prime_divisors(&o));
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    if !same_divisible_parts(h, g, &primes) {
        return Vec::new();
    }
    let mut ranges = Vec::with_capacity(primes.len());
    for &p in &primes {
        let lo = h.lattice_hull().iter().filter_map(|v| relative_height(g, v, p)).map(|x| -x).max();
        let hi = g.lattice_hull().iter().filter_map(|v| relative_height(h, v, p)).min();
        let (lo, hi) = match (lo, hi) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => (0, 0),
        };
        if lo > hi {
            return Vec::new();
        }
        ranges.push((p, lo, hi));
    }
    let mut out = vec![Rational::one()];
    for (p, lo, hi) in ranges {
        let base = Rational::from_integer(BigInt::from(p));
        let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
        for r in &out {
            for e in lo..=hi {
                next.push(r * num_traits::pow::Pow::pow(&base, e as i32));
            }
        }
        out = next;
    }
    out.sort_by(|a, b| weight(a).cmp(&weight(b)).then(a.cmp(b)));
    out
}

/// The literal relation `r·H = G`, searched over the finite set of possible `r`.
pub fn quasi_equal_strict(h: &GroupRep, g: &GroupRep) -> Option<QuasiWitness> {
    strict_candidates(h, g)
        .into_iter()
        .find(|r| h.scale(r).is_ok_and(|s| s.equals(g)))
        .map(|r| QuasiWitness::Strict { r })
}

/// Least `m > 0` with `m·H ≤ G`.
fn multiplier_into(h: &GroupRep, g: &GroupRep) -> Option<BigInt> {
    let m = h
        .lattice_hull()
        .iter()
        .try_fold(BigInt::one(), |acc, v| Some(acc.lcm(&g.order_modulo(v)?)))?;
    let ok = h.scale(&Rational::from_integer(m.clone())).ok()?.is_subgroup_of(g);
    ok.then_some(m)
}

/// The least `(a, b)` with `a·H ≤ G` and `b·G ≤ H`, if both exist.
pub fn commensurable(h: &GroupRep, g: &GroupRep) -> Option<QuasiWitness> {
    if h.ambient_dim() != g.ambient_dim() || h.span() != g.span() {
        return None;
    }
    let a = multiplier_into(h, g)?;
    let b = multiplier_into(g, h)?;
    Some(QuasiWitness::Commensurable { a, b })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiAutomorphism {
    #[serde(serialize_with = "crate::serde_util::rational")]
    pub r: Rational,
    pub automorphism: RationalMatrix,
}

/// Finds `r` with `(1/r)·M ∈ Aut(G)`.
pub fn quasi_automorphism_check(g: &GroupRep, m: &RationalMatrix) -> Result<Option<QuasiAutomorphism>> {
    let n = g.ambient_dim();
    if m.shape() != (n, n) {
        return Err(Error::AmbientMismatch { left: n, right: m.shape().0 });
    }
    if m.determinant().is_zero() {
        return Err(Error::Singular);
    }
    let image = g.transform(m)?;
    for s in strict_candidates(&image, g) {
        let alpha = m.scale(&s);
        if automorphism_check(g, &alpha)? {
            return Ok(Some(QuasiAutomorphism { r: s.recip(), automorphism: alpha }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum QuasiSplit {
    ExactSplit { decomposition: DecompositionRecord },
    QuasiSplit { decomposition: DecompositionRecord, quotient: FiniteQuotient },
    NoSplit { witness: TorsionWitness },
}

impl QuasiSplit {
    pub fn is_split(&self) -> bool {
        !matches!(self, QuasiSplit::NoSplit { .. })
    }

    pub fn index(&self) -> Option<BigInt> {
        match self {
            QuasiSplit::ExactSplit { .. } => Some(BigInt::one()),
            QuasiSplit::QuasiSplit { quotient, .. } => Some(quotient.order()),
            QuasiSplit::NoSplit { .. } => None,
        }
    }
}

pub fn quasi_split_check(p: &PartitionRecord) -> Result<QuasiSplit> {
    if let (true, Some(decomposition)) = check_splitting_partition(p) {
        return Ok(QuasiSplit::ExactSplit { decomposition });
    }
    let g = p.basis().group();
    let parts = p.purified_blocks();
    let sum = GroupRep::sum(g.ambient_dim(), &parts)?;
    match g.index_and_quotient(&sum)? {
        QuotientDescription::Finite(quotient) => Ok(QuasiSplit::QuasiSplit {
            decomposition: DecompositionRecord::with_default_flags(g.clone(), parts),
            quotient,
        }),
        QuotientDescription::InfiniteTorsion(witness) => Ok(QuasiSplit::NoSplit { witness }),
    }
}
