//! Bases of a group: maximal independent subsets, minimal multipliers,
//! B-representations and the pure hull `(B)_* = ⊕ b_*`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::decomp::{DecompositionRecord, SummandFlag};
use crate::error::{Error, Result};
use crate::group::GroupRep;
use crate::linalg::rational::{Rational, RationalVector};
use crate::linalg::subspace::{solve_left, Subspace};

/// A basis of `G`, stored positionally as given.
#[derive(Clone, Debug)]
pub struct BasisRecord {
    group: GroupRep,
    elements: Vec<RationalVector>,
}

impl BasisRecord {
    pub fn new(group: &GroupRep, elements: Vec<RationalVector>) -> Result<Self> {
        if !is_basis(group, &elements) {
            return Err(Error::NotABasis);
        }
        Ok(BasisRecord { group: group.clone(), elements })
    }

    pub fn group(&self) -> &GroupRep {
        &self.group
    }

    pub fn elements(&self) -> &[RationalVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The free subgroup `⟨B⟩`.
    pub fn free_span(&self) -> GroupRep {
        GroupRep::free(self.group.ambient_dim(), &self.elements).expect("basis elements are nonzero")
    }
}

fn independent(ambient: usize, elems: &[RationalVector]) -> bool {
    Subspace::span(ambient, elems).dim() == elems.len()
}

pub fn is_basis(g: &GroupRep, elems: &[RationalVector]) -> bool {
    elems.len() == g.rank()
        && elems.iter().all(|e| e.dim() == g.ambient_dim() && g.contains(e))
        && independent(g.ambient_dim(), elems)
}

/// Least `m` with `m·b ∈ G` for every `b`.
pub fn minimal_multiplier(g: &GroupRep, b: &[RationalVector]) -> Result<BigInt> {
    for x in b {
        if x.dim() != g.ambient_dim() {
            return Err(Error::AmbientMismatch { left: g.ambient_dim(), right: x.dim() });
        }
    }
    let s = Subspace::span(g.ambient_dim(), b);
    if s.dim() != b.len() || &s != g.span() {
        return Err(Error::SpanMismatch);
    }
    b.iter().try_fold(BigInt::one(), |acc, x| {
        let m = g.order_modulo(x).ok_or(Error::SpanMismatch)?;
        Ok(acc.lcm(&m))
    })
}

/// `a = k^{-1}·Σ n_b·b` with `gcd(k, n_b) = 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BRepresentation {
    #[serde(serialize_with = "crate::serde_util::big")]
    pub k: BigInt,
    #[serde(serialize_with = "crate::serde_util::big_vec")]
    pub coefficients: Vec<BigInt>,
}

pub fn b_representation(basis: &BasisRecord, a: &RationalVector) -> Result<BRepresentation> {
    let g = basis.group();
    if !g.member(a)? {
        return Err(Error::NotMember(a.to_string()));
    }
    let c = solve_left(basis.elements(), a).ok_or_else(|| Error::NotMember(a.to_string()))?;
    let k = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let kq = Rational::from_integer(k.clone());
    let coefficients = c.iter().map(|q| (q * &kq).to_integer()).collect();
    Ok(BRepresentation { k, coefficients })
}

/// Completes a basis `C` of `H ≤ G` to a basis of `G`. New directions are
/// taken from the standard vectors in index order (skipping those outside
/// `span(G)` or dependent), then from the echelon basis of `span(G)`, and the
/// new part is scaled by its minimal multiplier.
pub fn extend_basis(g: &GroupRep, h: &GroupRep, c: &[RationalVector]) -> Result<BasisRecord> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !is_basis(h, c) {
        return Err(Error::NotABasis);
    }
    let n = g.ambient_dim();
    let mut current = c.to_vec();
    let mut added = Vec::new();
    let candidates = (0..n)
        .map(|i| RationalVector::unit(n, i))
        .filter(|e| g.span().contains(e))
        .chain(g.span().basis().iter().cloned());
    for e in candidates {
        if current.len() == g.rank() {
            break;
        }
        current.push(e.clone());
        if independent(n, &current) {
            added.push(e);
        } else {
            current.pop();
        }
    }
    let m = added.iter().try_fold(BigInt::one(), |acc, x| {
        Ok::<_, Error>(acc.lcm(&g.order_modulo(x).ok_or(Error::SpanMismatch)?))
    })?;
    let mq = Rational::from_integer(m);
    let mut elements = c.to_vec();
    elements.extend(added.iter().map(|x| x.scale(&mq)));
    BasisRecord::new(g, elements)
}

/// `(B)_* = ⊕_{b∈B} b_*`, a full-rank subgroup of `G`.
pub fn pure_hull_sum(basis: &BasisRecord) -> DecompositionRecord {
    let g = basis.group();
    let summands: Vec<GroupRep> = basis
        .elements()
        .iter()
        .map(|b| g.purify_vectors(std::slice::from_ref(b)).expect("same ambient"))
        .collect();
    let flags = vec![SummandFlag::Rank1; summands.len()];
    DecompositionRecord::new(g.clone(), summands, flags)
}

/// `k > 0` and `gcd(k, n_b) = 1`.
pub fn representation_is_canonical(rep: &BRepresentation) -> bool {
    let g = rep.coefficients.iter().fold(rep.k.clone(), |acc, n| acc.gcd(n));
    rep.k > BigInt::zero() && g.is_one()
}
