//! Exact arithmetic for finite-rank torsion-free abelian groups presented as
//! finite sums `Σ Z[S_i^{-1}]·v_i` inside `Q^n`.

pub mod bases;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod group;
pub mod jonsson;
pub mod linalg;
pub mod oracle;
pub mod primes;
pub mod quasi;
pub mod strong;
pub mod suite;
pub mod text;
mod serde_util;
pub mod types;

pub use error::{Error, Result};
pub use group::{Comparison, Generator, GroupRep, PrimeClass};
pub use linalg::{Rational, RationalMatrix, RationalVector, Subspace};
pub use primes::PrimeSet;
pub use types::DivisibilityType;
