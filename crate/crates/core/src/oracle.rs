//! Brute-force reference implementations of membership and purification.
//! Slow and bounded; used to cross-check the main algorithms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::group::{Generator, GroupRep};
use crate::linalg::normal_form::hermite_normal_form;
use crate::linalg::rational::RationalVector;
use crate::linalg::subspace::QuotientMap;
use crate::linalg::{IntMatrix, Rational, RationalMatrix, Subspace};
use crate::primes::{prime_divisors, PrimeSet};

/// Whether `x` lies in the integer row lattice spanned by `rows`.
fn in_lattice(rows: &[RationalVector], x: &RationalVector) -> bool {
    let n = x.dim();
    let den = rows.iter().chain(std::iter::once(x)).fold(BigInt::one(), |acc, v| acc.lcm(&v.denominator_lcm()));
    let scale = Rational::from_integer(den);
    let to_int = |v: &RationalVector| -> Vec<BigInt> { v.scale(&scale).to_integers().expect("cleared") };
    let mut t = to_int(x);
    if rows.is_empty() {
        return t.iter().all(Zero::is_zero);
    }
    let m: Vec<Vec<BigInt>> = rows.iter().map(to_int).collect();
    let h = hermite_normal_form(&IntMatrix::new(m.len(), n, m));
    for (i, &c) in h.pivots.iter().enumerate() {
        let piv = h.h.get(i, c);
        let (q, r) = t[c].div_rem(piv);
        if !r.is_zero() {
            return false;
        }
        for (tj, hj) in t.iter_mut().zip(h.h.row(i)) {
            *tj -= &q * hj;
        }
    }
    t.iter().all(Zero::is_zero)
}

/// Membership in the lattice `Σ Z·v_i/(∏ S_i)^bound`, after factoring out the
/// span of the generators with every prime inverted.
pub fn brute_force_member(g: &GroupRep, x: &RationalVector, bound: u32) -> bool {
    if x.dim() != g.ambient_dim() {
        return false;
    }
    let divisible: Vec<RationalVector> =
        g.generators().iter().filter(|gen| gen.inverted.is_all()).map(|gen| gen.vector.clone()).collect();
    let q = QuotientMap::new(Subspace::span(g.ambient_dim(), &divisible));
    let rows: Vec<RationalVector> = g
        .generators()
        .iter()
        .filter(|gen| !gen.inverted.is_all())
        .map(|gen| {
            let d: BigInt = gen.inverted.finite_primes().iter().map(|&p| BigInt::from(p)).product();
            let d = num_traits::pow(d, bound as usize);
            q.apply(&gen.vector).scale(&Rational::new(BigInt::one(), d))
        })
        .collect();
    in_lattice(&rows, &q.apply(x))
}

fn minors_primes(vectors: &[RationalVector], n: usize, out: &mut Vec<u64>) {
    let r = Subspace::span(n, vectors).dim();
    if r == 0 {
        return;
    }
    let rows: Vec<Vec<usize>> = crate::decomp::Combinations::new(vectors.len(), r).collect();
    let cols: Vec<Vec<usize>> = crate::decomp::Combinations::new(n, r).collect();
    for rs in &rows {
        for cs in &cols {
            let m = RationalMatrix::from_rows(
                r,
                rs.iter().map(|&i| RationalVector::new(cs.iter().map(|&j| vectors[i][j].clone()).collect())).collect(),
            );
            let d = m.determinant();
            if !d.is_zero() {
                out.extend(prime_divisors(d.numer()));
                out.extend(prime_divisors(d.denom()));
            }
        }
    }
}

/// Primes that can occur in the height profile of a line of `G`.
fn relevant_primes(g: &GroupRep, u: &RationalVector) -> Vec<u64> {
    let mut out = vec![2, 3, 5, 7];
    let vectors: Vec<RationalVector> = g.generators().iter().map(|x| x.vector.clone()).collect();
    for v in vectors.iter().chain(std::iter::once(u)) {
        for e in v.entries() {
            if !e.is_zero() {
                out.extend(prime_divisors(e.numer()));
                out.extend(prime_divisors(e.denom()));
            }
        }
    }
    for gen in g.generators() {
        out.extend(gen.inverted.finite_primes());
    }
    minors_primes(&vectors, g.ambient_dim(), &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// `G ∩ Q·u` found by probing heights prime by prime. The probe starts at
/// `N·u` with `N = ∏ p^bound`; a prime whose height above that start reaches
/// `2·bound` is reported as inverted.
pub fn brute_force_purify(g: &GroupRep, u: &RationalVector, bound: u32) -> Option<Vec<Generator>> {
    if u.is_zero() || u.dim() != g.ambient_dim() {
        return None;
    }
    let n = g.ambient_dim();
    let all: Vec<RationalVector> =
        g.generators().iter().filter(|x| x.inverted.is_all()).map(|x| x.vector.clone()).collect();
    if Subspace::span(n, &all).contains(u) {
        return Some(vec![Generator::new(u.clone(), PrimeSet::All)]);
    }
    if !Subspace::span(n, &g.generators().iter().map(|x| x.vector.clone()).collect::<Vec<_>>()).contains(u) {
        return Some(Vec::new());
    }
    let (_, u) = u.primitive_decomposition();
    let primes = relevant_primes(g, &u);
    let big_n: BigInt = primes.iter().map(|&p| num_traits::pow(BigInt::from(p), bound as usize)).product();
    let mut y = u.scale(&Rational::from_integer(big_n));
    if !brute_force_member(g, &y, bound) {
        return None;
    }
    let limit = 3 * bound;
    let mut inverted = Vec::new();
    for &p in &primes {
        let pr = Rational::new(BigInt::one(), BigInt::from(p));
        let mut e = 0;
        while e < limit && brute_force_member(g, &y.scale(&pr), limit) {
            y = y.scale(&pr);
            e += 1;
        }
        if e == limit {
            inverted.push(p);
        }
    }
    Some(vec![Generator::new(y, PrimeSet::of(&inverted).expect("primes"))])
}
