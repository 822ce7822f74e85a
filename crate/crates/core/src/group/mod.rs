//! Finite-rank groups `G = Σ Z[S_i^{-1}]·v_i ⊆ Q^n`.
//!
//! Every predicate is decided locally. For a prime `p` the localisation is
//! `G_(p) = D_p ⊕ Z_(p)·L_p` where `D_p` is the span of the generators with
//! `p ∈ S_i` and `L_p` is the lattice spanned by the images of all generators
//! in `Q^n / D_p`. Primes that occur in no finite `S_i` share one generic view
//! (`D` = span of the `ALL` generators), and `G = ∩_p G_(p)`.

mod quotient;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::lattice::Lattice;
use crate::linalg::rational::{int_valuation, strip_primes, Rational, RationalVector};
use crate::linalg::subspace::{QuotientMap, Subspace};
use crate::linalg::RationalMatrix;
use crate::primes::{next_prime_after, PrimeSet};
use crate::types::DivisibilityType;

pub use quotient::{FiniteQuotient, QuotientDescription, TorsionWitness};

/// One rank-1 piece `Z[S^{-1}]·v`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Generator {
    pub vector: RationalVector,
    pub inverted: PrimeSet,
}

impl Generator {
    pub fn new(vector: RationalVector, inverted: PrimeSet) -> Self {
        Generator { vector, inverted }
    }

    pub fn plain(vector: RationalVector) -> Self {
        Generator { vector, inverted: PrimeSet::empty() }
    }
}

/// Which localisation: a specific prime, or the generic one shared by all
/// primes outside the tagged set (used for the `ALL` marker).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum PrimeClass {
    Prime(u64),
    All,
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeClass::Prime(p) => write!(f, "{p}"),
            PrimeClass::All => write!(f, "ALL"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct LocalView {
    quotient: QuotientMap,
    lattice: Lattice,
}

impl LocalView {
    fn build(ambient: usize, gens: &[Generator], divisible: impl Fn(&PrimeSet) -> bool) -> Self {
        let div: Vec<RationalVector> = gens
            .iter()
            .filter(|g| divisible(&g.inverted))
            .map(|g| g.vector.clone())
            .collect();
        let quotient = QuotientMap::new(Subspace::span(ambient, &div));
        let images: Vec<RationalVector> = gens.iter().map(|g| quotient.apply(&g.vector)).collect();
        let lattice = Lattice::generated_by(quotient.target_dim(), &images);
        LocalView { quotient, lattice }
    }

    pub(crate) fn divisible(&self) -> &Subspace {
        self.quotient.kernel()
    }

    pub(crate) fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Coordinates of the image of `x` in the local lattice basis.
    pub(crate) fn coords(&self, x: &RationalVector) -> Option<Vec<Rational>> {
        self.lattice.coordinates(&self.quotient.apply(x))
    }

    fn project(&self, x: &RationalVector) -> RationalVector {
        self.quotient.apply(x)
    }
}

/// Outcome of [`GroupRep::compare`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Comparison {
    Equal,
    LeftInRight,
    RightInLeft,
    Incomparable,
}

#[derive(Clone, Debug)]
pub struct GroupRep {
    ambient: usize,
    generators: Vec<Generator>,
    span: Subspace,
    tagged: Vec<u64>,
    hull: Lattice,
    generic: LocalView,
    local: Vec<LocalView>,
}

impl GroupRep {
    pub fn new(ambient: usize, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if g.vector.dim() != ambient {
                return Err(Error::AmbientMismatch { left: ambient, right: g.vector.dim() });
            }
            if g.vector.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        let mut tagged: Vec<u64> = generators
            .iter()
            .flat_map(|g| g.inverted.finite_primes().iter().copied())
            .collect();
        tagged.sort_unstable();
        tagged.dedup();
        let vectors: Vec<RationalVector> = generators.iter().map(|g| g.vector.clone()).collect();
        let span = Subspace::span(ambient, &vectors);
        let hull = Lattice::generated_by(ambient, &vectors);
        let generic = LocalView::build(ambient, &generators, |s| s.is_all());
        let local = tagged
            .iter()
            .map(|&p| LocalView::build(ambient, &generators, |s| s.contains(p)))
            .collect();
        Ok(GroupRep { ambient, generators, span, tagged, hull, generic, local })
    }

    pub fn zero(ambient: usize) -> Self {
        Self::new(ambient, Vec::new()).expect("the zero group is always valid")
    }

    /// Free abelian group on the rows of `basis`.
    pub fn free(ambient: usize, basis: &[RationalVector]) -> Result<Self> {
        Self::new(ambient, basis.iter().cloned().map(Generator::plain).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.span.dim()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Finite primes that occur in some inverted set.
    pub fn tagged_primes(&self) -> &[u64] {
        &self.tagged
    }

    pub fn has_all_marker(&self) -> bool {
        self.generators.iter().any(|g| g.inverted.is_all())
    }

    /// Tagged primes together with the primes dividing the lattice hull's
    /// echelon basis entries.
    pub fn active_primes(&self) -> Vec<u64> {
        let mut out = self.tagged.clone();
        for b in self.hull.basis() {
            for x in b.entries() {
                if x.is_zero() {
                    continue;
                }
                out.extend(crate::primes::prime_divisors(x.numer()));
                out.extend(crate::primes::prime_divisors(x.denom()));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Z-span of the generator vectors, as an echelon basis.
    pub fn lattice_hull(&self) -> &[RationalVector] {
        self.hull.basis()
    }

    pub(crate) fn view(&self, class: PrimeClass) -> &LocalView {
        match class {
            PrimeClass::Prime(p) => match self.tagged.binary_search(&p) {
                Ok(i) => &self.local[i],
                Err(_) => &self.generic,
            },
            PrimeClass::All => &self.generic,
        }
    }

    /// Subspace of directions in which `G` is `p`-divisible (resp. divisible).
    pub fn divisible_subspace(&self, class: PrimeClass) -> &Subspace {
        self.view(class).divisible()
    }

    fn check_dim(&self, x: usize) -> Result<()> {
        if x != self.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: x });
        }
        Ok(())
    }

    pub fn member(&self, x: &RationalVector) -> Result<bool> {
        self.check_dim(x.dim())?;
        Ok(self.contains(x))
    }

    pub(crate) fn contains(&self, x: &RationalVector) -> bool {
        let Some(coords) = self.generic.coords(x) else {
            return false;
        };
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        if !strip_primes(&den, &self.tagged).is_one() {
            return false;
        }
        for (&p, view) in self.tagged.iter().zip(&self.local) {
            let c = view.coords(x).expect("vector lies in the span");
            let p_big = BigInt::from(p);
            if c.iter().any(|q| q.denom().is_multiple_of(&p_big)) {
                return false;
            }
        }
        true
    }

    /// Whether the whole rank-1 piece `Z[S^{-1}]·v` lies in `G`.
    fn contains_piece(&self, g: &Generator) -> bool {
        if !self.contains(&g.vector) {
            return false;
        }
        match &g.inverted {
            PrimeSet::All => self.generic.divisible().contains(&g.vector),
            PrimeSet::Finite(ps) => ps
                .iter()
                .all(|&p| self.view(PrimeClass::Prime(p)).divisible().contains(&g.vector)),
        }
    }

    /// `self ≤ other`
    pub fn is_subgroup_of(&self, other: &GroupRep) -> bool {
        self.ambient == other.ambient && self.generators.iter().all(|g| other.contains_piece(g))
    }

    pub fn compare(&self, other: &GroupRep) -> Result<Comparison> {
        self.check_dim(other.ambient)?;
        let le = self.is_subgroup_of(other);
        let ge = other.is_subgroup_of(self);
        Ok(match (le, ge) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::LeftInRight,
            (false, true) => Comparison::RightInLeft,
            (false, false) => Comparison::Incomparable,
        })
    }

    pub fn equals(&self, other: &GroupRep) -> bool {
        matches!(self.compare(other), Ok(Comparison::Equal))
    }

    /// Multiplies `x ∈ G_(p) ∩ span(G)` by an integer prime to `p` so that
    /// the result lies in `G`.
    fn scale_into(&self, x: &RationalVector, p: u64) -> RationalVector {
        let coords = self.hull.coordinates(x).expect("vector lies in the span");
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let c = strip_primes(&den, &[p]);
        x.scale(&Rational::from_integer(c))
    }

    /// `U ∩ G`, the pure subgroup of `G` determined by the subspace `U`.
    pub fn purify(&self, u: &Subspace) -> Result<GroupRep> {
        self.check_dim(u.ambient_dim())?;
        let u = u.intersect(&self.span)?;
        if u.dim() == 0 {
            return Ok(GroupRep::zero(self.ambient));
        }
        let mut gens = Vec::new();
        let e = u.intersect(self.generic.divisible())?;
        for b in e.basis() {
            gens.push(Generator::new(b.clone(), PrimeSet::All));
        }
        for x in lattice_lifts(&self.generic, &u) {
            gens.push(Generator::plain(x));
        }
        for (&p, view) in self.tagged.iter().zip(&self.local) {
            let ep = u.intersect(view.divisible())?;
            for b in ep.basis() {
                gens.push(Generator::new(self.scale_into(b, p), PrimeSet::single(p)));
            }
            for y in lattice_lifts(view, &u) {
                gens.push(Generator::plain(self.scale_into(&y, p)));
            }
        }
        let r = GroupRep::new(self.ambient, gens)?;
        Ok(r.simplified())
    }

    pub fn purify_vectors(&self, vectors: &[RationalVector]) -> Result<GroupRep> {
        self.purify(&Subspace::span(self.ambient, vectors))
    }

    /// Largest `p`-divisible (resp. divisible) subgroup.
    pub fn divisible_part(&self, class: PrimeClass) -> GroupRep {
        let d = self.divisible_subspace(class).clone();
        let pure = self.purify(&d).expect("same ambient");
        // tag every generator with the divisibility it already has
        let tag = match class {
            PrimeClass::Prime(p) => PrimeSet::single(p),
            PrimeClass::All => PrimeSet::All,
        };
        let gens = pure
            .generators
            .iter()
            .map(|g| Generator::new(g.vector.clone(), g.inverted.union(&tag)))
            .collect();
        GroupRep::new(self.ambient, gens).expect("valid generators").simplified()
    }

    /// `type_G(a) = {r ∈ Q : r·a ∈ G}`.
    pub fn element_type(&self, a: &RationalVector) -> Result<DivisibilityType> {
        self.check_dim(a.dim())?;
        if !self.contains(a) {
            return Err(Error::NotMember(a.to_string()));
        }
        if a.is_zero() || self.generic.divisible().contains(a) {
            return Ok(DivisibilityType::rationals());
        }
        let mut inverted = Vec::new();
        let mut m = BigInt::one();
        for (&p, view) in self.tagged.iter().zip(&self.local) {
            if view.divisible().contains(a) {
                inverted.push(p);
                continue;
            }
            let c = view.coords(a).expect("member");
            let h = c
                .iter()
                .filter(|q| !q.is_zero())
                .map(|q| int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64)
                .min()
                .expect("nonzero image");
            m *= num_traits::pow(BigInt::from(p), h as usize);
        }
        let c = self.generic.coords(a).expect("member");
        let g = c
            .iter()
            .filter(|q| !q.is_zero())
            .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()));
        m *= strip_primes(&g, &self.tagged);
        DivisibilityType::new(Rational::from_integer(m), PrimeSet::of(&inverted)?)
    }

    /// Height of `a` at `p` (`None` = infinite).
    pub fn height(&self, a: &RationalVector, p: u64) -> Result<Option<i64>> {
        Ok(self.element_type(a)?.height(p))
    }

    /// Least `m > 0` with `m·x ∈ G`, or `None` when `x ∉ span(G)`.
    pub fn order_modulo(&self, x: &RationalVector) -> Option<BigInt> {
        let c = self.generic.coords(x)?;
        let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut m = strip_primes(&den, &self.tagged);
        for (&p, view) in self.tagged.iter().zip(&self.local) {
            if view.divisible().contains(x) {
                continue;
            }
            let c = view.coords(x)?;
            let worst = c
                .iter()
                .filter(|q| !q.is_zero())
                .map(|q| int_valuation(q.denom(), p))
                .max()
                .unwrap_or(0);
            m *= num_traits::pow(BigInt::from(p), worst as usize);
        }
        Some(m)
    }

    pub fn scale(&self, r: &Rational) -> Result<GroupRep> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        GroupRep::new(
            self.ambient,
            self.generators
                .iter()
                .map(|g| Generator::new(g.vector.scale(r), g.inverted.clone()))
                .collect(),
        )
    }

    /// Image `G·M` under the linear map `x ↦ x·M`.
    pub fn transform(&self, m: &RationalMatrix) -> Result<GroupRep> {
        let (rows, cols) = m.shape();
        self.check_dim(rows)?;
        GroupRep::new(
            cols,
            self.generators
                .iter()
                .map(|g| Generator::new(m.apply(&g.vector), g.inverted.clone()))
                .filter(|g| !g.vector.is_zero())
                .collect(),
        )
    }

    /// Internal sum of subgroups of the same ambient space.
    pub fn sum<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a GroupRep>) -> Result<GroupRep> {
        let mut gens = Vec::new();
        for g in parts {
            if g.ambient != ambient {
                return Err(Error::AmbientMismatch { left: ambient, right: g.ambient });
            }
            gens.extend(g.generators.iter().cloned());
        }
        GroupRep::new(ambient, gens)
    }

    /// External direct sum in block coordinates.
    pub fn direct_sum(&self, other: &GroupRep) -> GroupRep {
        let n = self.ambient + other.ambient;
        let pad = |v: &RationalVector, before: usize| {
            let mut e = vec![Rational::zero(); before];
            e.extend(v.entries().iter().cloned());
            e.resize(n, Rational::zero());
            RationalVector::new(e)
        };
        let mut gens: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator::new(pad(&g.vector, 0), g.inverted.clone()))
            .collect();
        gens.extend(
            other
                .generators
                .iter()
                .map(|g| Generator::new(pad(&g.vector, self.ambient), g.inverted.clone())),
        );
        GroupRep::new(n, gens).expect("valid generators")
    }

    /// An equal group with a tidier generating set: generators sharing an
    /// inverted set are replaced by an echelon basis of their span, redundant
    /// pieces are dropped, and rank-1 groups get a single generator whose
    /// element type has trivial co-denominator.
    pub fn simplified(&self) -> GroupRep {
        if self.generators.is_empty() {
            return self.clone();
        }
        if self.rank() == 1 {
            return self.rank_one_normal_form();
        }
        let mut tags: Vec<PrimeSet> = self.generators.iter().map(|g| g.inverted.clone()).collect();
        tags.sort();
        tags.dedup();
        let mut gens = Vec::new();
        for tag in tags {
            let vs: Vec<RationalVector> = self
                .generators
                .iter()
                .filter(|g| g.inverted == tag)
                .map(|g| g.vector.clone())
                .collect();
            let basis: Vec<RationalVector> = if tag.is_all() {
                Subspace::span(self.ambient, &vs).basis().to_vec()
            } else {
                Lattice::generated_by(self.ambient, &vs).basis().to_vec()
            };
            gens.extend(basis.into_iter().map(|v| Generator::new(v, tag.clone())));
        }
        // drop pieces already contained in the rest
        let mut i = 0;
        while i < gens.len() && gens.len() > 1 {
            let mut rest = gens.clone();
            let g = rest.remove(i);
            let r = GroupRep::new(self.ambient, rest.clone()).expect("valid");
            if r.contains_piece(&g) {
                gens = rest;
            } else {
                i += 1;
            }
        }
        GroupRep::new(self.ambient, gens).expect("valid")
    }

    fn rank_one_normal_form(&self) -> GroupRep {
        let x = &self.generators[0].vector;
        let ty = self.element_type(x).expect("generator is a member");
        let (c, u) = x.primitive_decomposition();
        let (vector, inverted) = match ty.divisible_primes() {
            PrimeSet::All => (u, PrimeSet::All),
            PrimeSet::Finite(ps) => {
                // G = Z[S^-1]·(x/m); drop S-units from the coefficient
                let coeff = (c / ty.co_denominator()).abs();
                let coeff = Rational::new(strip_primes(coeff.numer(), ps), strip_primes(coeff.denom(), ps));
                (u.scale(&coeff), PrimeSet::Finite(ps.clone()))
            }
        };
        GroupRep::new(self.ambient, vec![Generator::new(vector, inverted)]).expect("valid")
    }

    /// `G/A` for a full-rank subgroup `A`.
    pub fn index_and_quotient(&self, a: &GroupRep) -> Result<QuotientDescription> {
        quotient::index_and_quotient(self, a)
    }

    /// Witness prime for the generic view: the least prime outside both
    /// groups' tagged sets.
    pub(crate) fn untagged_prime(groups: &[&GroupRep]) -> u64 {
        let mut p = 2;
        while groups.iter().any(|g| g.tagged.contains(&p)) {
            p = next_prime_after(p);
        }
        p
    }
}

/// Z-basis lifts of the lattice `π(U) ∩ L` back into `U`.
fn lattice_lifts(view: &LocalView, u: &Subspace) -> Vec<RationalVector> {
    let pu = Subspace::span(
        view.quotient.target_dim(),
        &u.basis().iter().map(|b| view.project(b)).collect::<Vec<_>>(),
    );
    if pu.dim() == 0 {
        return Vec::new();
    }
    let projected: Vec<RationalVector> = u.basis().iter().map(|b| view.project(b)).collect();
    view.lattice
        .intersect_subspace(&pu)
        .into_iter()
        .map(|y| {
            let a = crate::linalg::subspace::solve_left(&projected, &y).expect("y lies in π(U)");
            let mut x = RationalVector::zeros(u.ambient_dim());
            for (c, b) in a.iter().zip(u.basis()) {
                if !c.is_zero() {
                    x = &x + &b.scale(c);
                }
            }
            x
        })
        .collect()
}

impl PartialOrd for GroupRep {
    /// Inclusion order.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.compare(other).ok()? {
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::LeftInRight => Some(Ordering::Less),
            Comparison::RightInLeft => Some(Ordering::Greater),
            Comparison::Incomparable => None,
        }
    }
}

impl PartialEq for GroupRep {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for GroupRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "0");
        }
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match &g.inverted {
                PrimeSet::All => write!(f, "Q{}", g.vector)?,
                PrimeSet::Finite(ps) if ps.is_empty() => write!(f, "Z{}", g.vector)?,
                PrimeSet::Finite(ps) => {
                    let list: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                    write!(f, "Z[{}]{}", list.join(","), g.vector)?
                }
            }
        }
        Ok(())
    }
}

impl Serialize for GroupRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests;
