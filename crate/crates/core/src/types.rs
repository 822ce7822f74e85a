//! Rank-1 types: subgroups of Q of the form `(1/m)·Z[S^{-1}]`.
//!
//! A type is stored by its co-denominator `m` and the set `S` of primes at
//! which it is divisible. At a prime `p ∉ S` the type has finite height
//! `v_p(m)`; at `p ∈ S` the height is infinite. Canonical form: no prime of
//! `S` divides the numerator or denominator of `m`. Element types always have
//! integral `m`; rational `m` appears only after scaling (e.g. `2·Z`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rational::{fmt_rational, strip_primes, valuation, Rational};
use crate::primes::{prime_divisors, PrimeSet};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DivisibilityType {
    m: Rational,
    primes: PrimeSet,
}

impl DivisibilityType {
    pub fn new(m: Rational, primes: PrimeSet) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::ZeroScalar);
        }
        Ok(Self::canonical(m, primes))
    }

    fn canonical(m: Rational, primes: PrimeSet) -> Self {
        match primes {
            PrimeSet::All => DivisibilityType { m: Rational::one(), primes: PrimeSet::All },
            PrimeSet::Finite(ref ps) => {
                let num = strip_primes(m.numer(), ps);
                let den = strip_primes(m.denom(), ps);
                DivisibilityType { m: Rational::new(num, den), primes }
            }
        }
    }

    pub fn integers() -> Self {
        DivisibilityType { m: Rational::one(), primes: PrimeSet::empty() }
    }

    pub fn rationals() -> Self {
        DivisibilityType { m: Rational::one(), primes: PrimeSet::All }
    }

    pub fn localization(primes: &[u64]) -> Result<Self> {
        Ok(DivisibilityType { m: Rational::one(), primes: PrimeSet::of(primes)? })
    }

    pub fn co_denominator(&self) -> &Rational {
        &self.m
    }

    pub fn divisible_primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// Height at `p`; `None` means infinite.
    pub fn height(&self, p: u64) -> Option<i64> {
        if self.primes.contains(p) {
            None
        } else if self.m.is_one() {
            Some(0)
        } else {
            Some(valuation(&self.m, p))
        }
    }

    fn finite_support(&self) -> Vec<u64> {
        let mut v = prime_divisors(self.m.numer());
        v.extend(prime_divisors(self.m.denom()));
        v.sort_unstable();
        v.dedup();
        v
    }

    fn from_heights(primes: PrimeSet, heights: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut m = Rational::one();
        for (p, h) in heights {
            if h != 0 && !primes.contains(p) {
                let pp = Rational::from_integer(BigInt::from(p));
                m *= num_traits::pow(pp, h.unsigned_abs() as usize).pow(h.signum() as i32);
            }
        }
        Self::canonical(m, primes)
    }

    pub fn meet(&self, other: &Self) -> Self {
        let primes = self.primes.intersection(&other.primes);
        let mut support = self.finite_support();
        support.extend(other.finite_support());
        support.sort_unstable();
        support.dedup();
        let heights = support.into_iter().map(|p| {
            let h = match (self.height(p), other.height(p)) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => 0,
            };
            (p, h)
        });
        Self::from_heights(primes, heights.collect::<Vec<_>>())
    }

    pub fn join(&self, other: &Self) -> Self {
        let primes = self.primes.union(&other.primes);
        let mut support = self.finite_support();
        support.extend(other.finite_support());
        support.sort_unstable();
        support.dedup();
        let heights = support.into_iter().map(|p| {
            let h = match (self.height(p), other.height(p)) {
                (Some(a), Some(b)) => a.max(b),
                _ => 0,
            };
            (p, h)
        });
        Self::from_heights(primes, heights.collect::<Vec<_>>())
    }

    /// Containment as subgroups of Q.
    pub fn leq(&self, other: &Self) -> bool {
        if !self.primes.is_subset(&other.primes) {
            return false;
        }
        let mut support = self.finite_support();
        support.extend(other.finite_support());
        support.into_iter().all(|p| match (self.height(p), other.height(p)) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        })
    }

    pub fn scale(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Self::canonical(&self.m / r.abs(), self.primes.clone()))
    }

    /// Two rank-1 groups are isomorphic iff their types have the same set of
    /// primes of infinite height.
    pub fn isomorphic(&self, other: &Self) -> bool {
        self.primes == other.primes
    }

    /// Whether `r·x ∈ τ` for every `x ∈ τ` and back, i.e. `r·τ = τ`.
    pub fn is_unit(&self, r: &Rational) -> bool {
        self.scale(r).is_ok_and(|s| &s == self)
    }

    pub fn contains(&self, q: &Rational) -> bool {
        if q.is_zero() {
            return true;
        }
        // q ∈ (1/m) Z[S^-1] iff q·m has no denominator primes outside S
        let x = q * &self.m;
        match &self.primes {
            PrimeSet::All => true,
            PrimeSet::Finite(ps) => strip_primes(x.denom(), ps).is_one(),
        }
    }
}

impl fmt::Display for DivisibilityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primes.is_all() {
            return write!(f, "Q");
        }
        let coeff = self.m.recip();
        if !coeff.is_one() {
            write!(f, "{} ", fmt_rational(&coeff))?;
        }
        write!(f, "Z")?;
        let ps = self.primes.finite_primes();
        if !ps.is_empty() {
            write!(f, "[")?;
            for (i, p) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for DivisibilityType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for DivisibilityType {
    type Err = Error;

    /// Accepts `Q`, `Z`, `Z[2,3]`, `1/6 Z[5]`, `2 Z`, `2/3 Z[7]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { line: 1, col: 1, msg: format!("{msg}: `{s}`") };
        let s = s.trim();
        if s == "Q" {
            return Ok(Self::rationals());
        }
        let (coeff, rest) = match s.rsplit_once(' ') {
            Some((c, r)) => (c.trim(), r.trim()),
            None => ("1", s),
        };
        let coeff: Rational = coeff.parse().map_err(|_| bad("bad coefficient"))?;
        if !coeff.is_positive() {
            return Err(bad("coefficient must be positive"));
        }
        let primes = if rest == "Z" {
            PrimeSet::empty()
        } else if let Some(inner) = rest.strip_prefix("Z[").and_then(|r| r.strip_suffix(']')) {
            let ps: std::result::Result<Vec<u64>, _> = inner.split(',').map(|p| p.trim().parse::<u64>()).collect();
            PrimeSet::of(&ps.map_err(|_| bad("bad prime list"))?)?
        } else {
            return Err(bad("expected Z, Z[...] or Q"));
        };
        let t = Self::canonical(coeff.recip(), primes);
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, rat};

    fn t(m: i64, ps: &[u64]) -> DivisibilityType {
        DivisibilityType::new(int(m), PrimeSet::of(ps).unwrap()).unwrap()
    }

    #[test]
    fn meet_examples() {
        assert_eq!(t(1, &[2]).meet(&t(1, &[3])), t(1, &[]));
        let x = t(6, &[5]);
        assert_eq!(x.meet(&x), x);
        assert_eq!(t(2, &[]).meet(&DivisibilityType::rationals()), t(2, &[]));
    }

    #[test]
    fn join_leq_eq_examples() {
        assert_eq!(t(1, &[2]).join(&t(1, &[3])), t(1, &[2, 3]));
        assert!(t(1, &[]).leq(&t(1, &[5])));
        assert_ne!(t(2, &[]), t(1, &[]));
        assert!(!t(2, &[]).leq(&t(1, &[])));
        assert!(t(1, &[]).leq(&t(2, &[])));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(t(1, &[]).scale(&rat(1, 2)).unwrap(), t(2, &[]));
        assert_eq!(t(1, &[2]).scale(&int(2)).unwrap(), t(1, &[2]));
        assert_eq!(t(3, &[2]).scale(&int(3)).unwrap(), t(1, &[2]));
        assert_eq!(t(1, &[]).scale(&int(0)), Err(Error::ZeroScalar));
        // 2Z has rational co-denominator
        let two_z = t(1, &[]).scale(&int(2)).unwrap();
        assert_eq!(two_z.to_string(), "2 Z");
        assert!(two_z.leq(&t(1, &[])));
    }

    #[test]
    fn canonical_form_absorbs_divisible_primes() {
        assert_eq!(t(6, &[2]), t(3, &[2]));
        assert_eq!(DivisibilityType::new(int(5), PrimeSet::All).unwrap(), DivisibilityType::rationals());
    }

    #[test]
    fn membership() {
        let x = t(3, &[2]);
        assert!(x.contains(&rat(1, 3)));
        assert!(x.contains(&rat(5, 12)));
        assert!(!x.contains(&rat(1, 9)));
    }

    #[test]
    fn text_round_trip() {
        for s in ["Z", "Q", "Z[2,3]", "1/6 Z[5]", "2 Z", "2/3 Z[7]", "1/2 Z"] {
            let ty: DivisibilityType = s.parse().unwrap();
            assert_eq!(ty.to_string(), s);
        }
        assert!("Z[4]".parse::<DivisibilityType>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn ty() -> impl Strategy<Value = DivisibilityType> {
            let primes = [2u64, 3, 5, 7];
            (
                proptest::collection::vec(0u32..3, 4),
                proptest::collection::vec(any::<bool>(), 4),
                0u8..10,
            )
                .prop_map(move |(exps, divisible, all)| {
                    if all == 0 {
                        return DivisibilityType::rationals();
                    }
                    let mut m = BigInt::one();
                    let mut s = Vec::new();
                    for i in 0..4 {
                        if divisible[i] {
                            s.push(primes[i]);
                        } else {
                            m *= BigInt::from(primes[i]).pow(exps[i]);
                        }
                    }
                    DivisibilityType::new(Rational::from_integer(m), PrimeSet::of(&s).unwrap()).unwrap()
                })
        }

        fn unit_candidate() -> impl Strategy<Value = Rational> {
            (proptest::collection::vec(-2i32..3, 4), any::<bool>()).prop_map(|(e, neg)| {
                let mut r = Rational::one();
                for (p, k) in [2i64, 3, 5, 7].iter().zip(e) {
                    r *= Rational::from_integer(BigInt::from(*p)).pow(k);
                }
                if neg { -r } else { r }
            })
        }

        proptest! {
            #[test]
            fn lattice_laws(a in ty(), b in ty(), c in ty()) {
                prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
                prop_assert_eq!(a.join(&a.meet(&b)), a.clone());
                prop_assert_eq!(a.meet(&b.meet(&c)), a.meet(&b).meet(&c));
                prop_assert_eq!(a.join(&b.join(&c)), a.join(&b).join(&c));
                prop_assert_eq!(a.meet(&b), b.meet(&a));
                prop_assert!(a.meet(&b).leq(&a) && a.leq(&a.join(&b)));
                prop_assert_eq!(a.leq(&b), a.meet(&b) == a);
            }

            #[test]
            fn scaling_fixes_exactly_units(a in ty(), r in unit_candidate()) {
                let supported = match a.divisible_primes() {
                    PrimeSet::All => true,
                    PrimeSet::Finite(ps) => strip_primes(r.numer(), ps).is_one() && strip_primes(r.denom(), ps).is_one(),
                };
                prop_assert_eq!(a.is_unit(&r), supported);
                let scaled = a.scale(&r).unwrap();
                prop_assert!(scaled.isomorphic(&a));
                prop_assert_eq!(scaled.scale(&r.recip()).unwrap(), a);
            }

            #[test]
            fn text_round_trips(a in ty()) {
                prop_assert_eq!(a.to_string().parse::<DivisibilityType>().unwrap(), a);
            }
        }
    }
}
