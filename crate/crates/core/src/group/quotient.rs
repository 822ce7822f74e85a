//! Finite quotients `G/A` for full-rank subgroups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{GroupRep, LocalView, PrimeClass};
use crate::error::{Error, Result};
use crate::linalg::matrix::RationalMatrix;
use crate::linalg::normal_form::{hermite_normal_form, smith_normal_form};
use crate::linalg::IntMatrix;
use crate::linalg::rational::{crt, p_part, reduce_mod, strip_primes, Rational, RationalVector};

/// Evidence that `G/A` has an infinite `p`-primary part: `direction` lies in
/// `G` and is `p`-divisible in `G` but not in `A`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TorsionWitness {
    pub prime: u64,
    pub direction: RationalVector,
}

impl fmt::Display for TorsionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is {}-divisible in the group but not in the subgroup", self.direction, self.prime)
    }
}

#[derive(Clone, Debug)]
struct Component {
    view: LocalView,
    /// Right transform from local coordinates to Smith coordinates.
    q: RationalMatrix,
    /// One modulus per Smith coordinate, ascending under divisibility.
    moduli: Vec<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteQuotient {
    #[serde(serialize_with = "crate::serde_util::big_vec")]
    pub invariant_factors: Vec<BigInt>,
    /// Images of the generators of `G`, in invariant-factor coordinates.
    #[serde(serialize_with = "crate::serde_util::big_rows")]
    pub generator_images: Vec<Vec<BigInt>>,
    #[serde(skip)]
    components: Vec<Component>,
}

impl FiniteQuotient {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of `x + A` for `x ∈ G`.
    pub fn image(&self, x: &RationalVector) -> Option<Vec<BigInt>> {
        let r = self.invariant_factors.len();
        let mut per_component = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let c = comp.view.coords(x)?;
            let y = RationalMatrix::from_rows(c.len(), vec![RationalVector::new(c)]).mul(&comp.q);
            let y = &y.row_vectors()[0];
            let offset = r - comp.moduli.len();
            let mut vals = vec![BigInt::zero(); r];
            for (k, m) in comp.moduli.iter().enumerate() {
                if y[k].denom().gcd(m) != BigInt::one() {
                    return None;
                }
                vals[offset + k] = reduce_mod(&y[k], m);
            }
            per_component.push((offset, vals));
        }
        let mut out = Vec::with_capacity(r);
        for j in 0..r {
            let residues: Vec<(BigInt, BigInt)> = self
                .components
                .iter()
                .zip(&per_component)
                .filter(|(_, (offset, _))| j >= *offset)
                .map(|(comp, (offset, vals))| (vals[j].clone(), comp.moduli[j - offset].clone()))
                .collect();
            out.push(crt(&residues).0);
        }
        Some(out)
    }

    /// HNF of the images `gens` stacked on the relations `diag(d_i)`, with
    /// its transform.
    fn relation_hermite(&self, gens: &[Vec<BigInt>]) -> crate::linalg::Hermite {
        let k = self.invariant_factors.len();
        let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
        for (i, d) in self.invariant_factors.iter().enumerate() {
            let mut r = vec![BigInt::zero(); k];
            r[i] = d.clone();
            rows.push(r);
        }
        hermite_normal_form(&IntMatrix::new(rows.len(), k, rows))
    }

    /// `[Q : ⟨gens⟩]`.
    pub fn subgroup_index(&self, gens: &[Vec<BigInt>]) -> BigInt {
        let h = self.relation_hermite(gens);
        h.pivots.iter().enumerate().map(|(i, &c)| h.h.get(i, c).clone()).product()
    }

    /// `|⟨gens⟩|`.
    pub fn subgroup_order(&self, gens: &[Vec<BigInt>]) -> BigInt {
        self.order() / self.subgroup_index(gens)
    }

    pub fn same_subgroup(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
        let both: Vec<Vec<BigInt>> = a.iter().chain(b).cloned().collect();
        let i = self.subgroup_index(&both);
        self.subgroup_index(a) == i && self.subgroup_index(b) == i
    }

    /// Whether the subgroups generated by the blocks form an internal direct
    /// decomposition of `Q`.
    pub fn is_direct_decomposition(&self, blocks: &[Vec<Vec<BigInt>>]) -> bool {
        let all: Vec<Vec<BigInt>> = blocks.iter().flatten().cloned().collect();
        let product: BigInt = blocks.iter().map(|b| self.subgroup_order(b)).product();
        self.subgroup_index(&all).is_one() && product == self.order()
    }

    /// Integer weights `c` with `Σ c_j·generator_images[j] = target` in `Q`.
    pub fn express(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let m = self.generator_images.len();
        let h = self.relation_hermite(&self.generator_images);
        if !h.pivots.iter().enumerate().all(|(i, &c)| i == c && h.h.get(i, c).is_one()) {
            return None;
        }
        let k = self.invariant_factors.len();
        let mut out = vec![BigInt::zero(); m];
        for (i, t) in target.iter().enumerate().take(k) {
            for (j, o) in out.iter_mut().enumerate() {
                *o += t * h.u.get(i, j);
            }
        }
        Some(out)
    }
}

/// `Z/d1 x Z/d2 ...`, or `0` for the trivial group.
impl fmt::Display for FiniteQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuotientDescription {
    Finite(FiniteQuotient),
    InfiniteTorsion(TorsionWitness),
}

impl QuotientDescription {
    pub fn finite(&self) -> Option<&FiniteQuotient> {
        match self {
            QuotientDescription::Finite(q) => Some(q),
            QuotientDescription::InfiniteTorsion(_) => None,
        }
    }

    pub fn index(&self) -> Option<BigInt> {
        self.finite().map(FiniteQuotient::order)
    }
}

impl fmt::Display for QuotientDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDescription::Finite(q) => write!(f, "{q}"),
            QuotientDescription::InfiniteTorsion(w) => write!(f, "infinite: {w}"),
        }
    }
}

fn missing_direction(g: &GroupRep, a: &GroupRep, class: PrimeClass, prime: u64) -> Option<TorsionWitness> {
    let dg = g.divisible_subspace(class);
    let da = a.divisible_subspace(class);
    let b = dg.basis().iter().find(|b| !da.contains(b))?;
    let direction = match class {
        PrimeClass::Prime(p) if g.tagged.contains(&p) => g.scale_into(b, p),
        _ => b.clone(),
    };
    Some(TorsionWitness { prime, direction })
}

/// Smith data of `L_A` inside `L_G` at one localisation, keeping only the
/// part of each elementary divisor selected by `keep`.
fn component(g: &GroupRep, a: &GroupRep, class: PrimeClass, keep: impl Fn(&BigInt) -> BigInt) -> Component {
    let gv = g.view(class);
    let av = a.view(class);
    let k = gv.lattice().rank();
    let rows: Vec<Vec<BigInt>> = av
        .lattice()
        .basis()
        .iter()
        .map(|b| {
            let c = gv.lattice().coordinates(b).expect("subgroup lattice lies in the span");
            let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let den = match class {
                PrimeClass::Prime(p) => strip_primes(&den, &[p]),
                PrimeClass::All => den,
            };
            c.iter().map(|q| (q * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let m = crate::linalg::IntMatrix::new(rows.len(), k, rows);
    let s = smith_normal_form(&m);
    let moduli: Vec<BigInt> = s.invariant_factors.iter().map(&keep).collect();
    let first = moduli.iter().position(|d| !d.is_one()).unwrap_or(moduli.len());
    let q = s.q.to_rational();
    let q = RationalMatrix::from_rows(
        moduli.len() - first,
        q.row_vectors()
            .iter()
            .map(|r| RationalVector::new(r.entries()[first..moduli.len()].to_vec()))
            .collect(),
    );
    Component { view: gv.clone(), q, moduli: moduli[first..].to_vec() }
}

pub(super) fn index_and_quotient(g: &GroupRep, a: &GroupRep) -> Result<QuotientDescription> {
    g.check_dim(a.ambient)?;
    if !a.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if a.rank() != g.rank() {
        return Err(Error::NotFullSpan);
    }
    let mut primes: Vec<u64> = g.tagged.iter().chain(&a.tagged).copied().collect();
    primes.sort_unstable();
    primes.dedup();

    let generic_prime = GroupRep::untagged_prime(&[g, a]);
    if let Some(w) = missing_direction(g, a, PrimeClass::All, generic_prime) {
        return Ok(QuotientDescription::InfiniteTorsion(w));
    }
    for &p in &primes {
        if let Some(w) = missing_direction(g, a, PrimeClass::Prime(p), p) {
            return Ok(QuotientDescription::InfiniteTorsion(w));
        }
    }

    let mut components = Vec::new();
    for &p in &primes {
        components.push(component(g, a, PrimeClass::Prime(p), |d| p_part(d, p)));
    }
    components.push(component(g, a, PrimeClass::All, |d| strip_primes(d, &primes)));
    components.retain(|c| !c.moduli.is_empty());

    let r = components.iter().map(|c| c.moduli.len()).max().unwrap_or(0);
    let invariant_factors: Vec<BigInt> = (0..r)
        .map(|j| {
            components
                .iter()
                .filter(|c| j + c.moduli.len() >= r)
                .map(|c| c.moduli[j + c.moduli.len() - r].clone())
                .product()
        })
        .collect();
    let mut quotient = FiniteQuotient { invariant_factors, generator_images: Vec::new(), components };
    quotient.generator_images = g
        .generators
        .iter()
        .map(|gen| quotient.image(&gen.vector).expect("generators lie in the group"))
        .collect();
    Ok(QuotientDescription::Finite(quotient))
}
