//! Exact rational and integer linear algebra.

pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod rational;
pub mod subspace;

pub use lattice::Lattice;
pub use matrix::{IntMatrix, RationalMatrix};
pub use normal_form::{hermite_normal_form, smith_normal_form, Hermite, Smith};
pub use rational::{rat, int, Rational, RationalVector};
pub use subspace::{QuotientMap, Subspace};
