use thiserror::Error;

use crate::group::TorsionWitness;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("zero scalar")]
    ZeroScalar,
    #[error("vector {0} is not an element of the group")]
    NotMember(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("subgroup does not span the same subspace")]
    NotFullSpan,
    #[error("the quotient is infinite: {0}")]
    InfiniteIndex(TorsionWitness),
    #[error("summand spans overlap or do not add up to the span of the group")]
    SpanOverlap,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not a basis of the group")]
    NotABasis,
    #[error("rank {rank} exceeds the configured limit {limit}")]
    RankLimit { rank: usize, limit: usize },
    #[error("matrix is singular on the span of the group")]
    Singular,
    #[error("matrix is not an automorphism of the group")]
    NotAutomorphism,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero generator vector")]
    ZeroGenerator,
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("no Jónsson basis found within the search bounds")]
    NoJonssonBasis,
    #[error("decompositions belong to different groups")]
    DifferentGroups,
    #[error("invalid quotient decomposition: {0}")]
    InvalidQuotientDecomposition(String),
    #[error("vectors do not span the group's subspace")]
    SpanMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
