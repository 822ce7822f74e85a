//! Serialisation helpers: big integers are written as decimal strings.

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};

pub fn big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn big_vec<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn big_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        let r: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

pub fn rational<S: Serializer>(q: &crate::linalg::Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::linalg::rational::fmt_rational(q))
}
