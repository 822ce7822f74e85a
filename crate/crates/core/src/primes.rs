//! Primes, prime sets and integer factorisation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime_after(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

fn pollard_rho(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut x, mut y, mut d) = (BigInt::from(2), BigInt::from(2), BigInt::one());
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

fn big_is_prime(n: &BigInt) -> bool {
    if let Some(k) = n.to_u64() {
        return is_prime(k);
    }
    // Miller-Rabin with fixed bases; inputs here are far below any known pseudoprime range
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p < 10_000 && !n.is_one() {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if big_is_prime(&m) {
            out.push(m.to_u64().expect("prime factor exceeds 64 bits"));
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// A set of primes: finite and sorted, or every prime.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PrimeSet {
    Finite(Vec<u64>),
    All,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet::Finite(Vec::new())
    }

    pub fn of(primes: &[u64]) -> Result<Self, crate::Error> {
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(crate::Error::NotPrime(p));
        }
        let mut v = primes.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(PrimeSet::Finite(v))
    }

    pub fn single(p: u64) -> Self {
        PrimeSet::Finite(vec![p])
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Finite(v) => v.binary_search(&p).is_ok(),
        }
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::All)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(v) if v.is_empty())
    }

    /// The listed primes; empty for `All`.
    pub fn finite_primes(&self) -> &[u64] {
        match self {
            PrimeSet::All => &[],
            PrimeSet::Finite(v) => v,
        }
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        match (self, other) {
            (PrimeSet::All, _) | (_, PrimeSet::All) => PrimeSet::All,
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => {
                let mut v: Vec<u64> = a.iter().chain(b).copied().collect();
                v.sort_unstable();
                v.dedup();
                PrimeSet::Finite(v)
            }
        }
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        match (self, other) {
            (PrimeSet::All, x) | (x, PrimeSet::All) => x.clone(),
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => {
                PrimeSet::Finite(a.iter().copied().filter(|p| b.contains(p)).collect())
            }
        }
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        match (self, other) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, _) => false,
            (PrimeSet::Finite(a), PrimeSet::Finite(_)) => a.iter().all(|&p| other.contains(p)),
        }
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::All => write!(f, "ALL"),
            PrimeSet::Finite(v) => {
                write!(f, "{{")?;
                for (i, p) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl Serialize for PrimeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert_eq!(next_prime_after(7), 11);
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_divisors(&BigInt::from(360)), vec![2, 3, 5]);
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64) * 4;
        assert_eq!(prime_divisors(&big), vec![2, 998_244_353, 1_000_000_007]);
        assert_eq!(prime_divisors(&BigInt::from(-1)), Vec::<u64>::new());
    }

    #[test]
    fn set_algebra() {
        let a = PrimeSet::of(&[2, 3]).unwrap();
        let b = PrimeSet::of(&[3, 5]).unwrap();
        assert_eq!(a.intersection(&b), PrimeSet::single(3));
        assert_eq!(a.union(&b), PrimeSet::of(&[2, 3, 5]).unwrap());
        assert_eq!(a.union(&PrimeSet::All), PrimeSet::All);
        assert_eq!(a.intersection(&PrimeSet::All), a);
        assert!(PrimeSet::of(&[4]).is_err());
    }
}
