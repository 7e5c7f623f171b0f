use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive: {0:?}")]
    ZeroPart(Vec<u32>),
    #[error("partition parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("{partition} is not a {e}-core")]
    NotACore { partition: Partition, e: u32 },
    #[error("quotient has {found} components, expected {expected}")]
    QuotientLength { expected: usize, found: usize },
    #[error("tower level {level} has {found} entries, expected {expected}")]
    TowerLevelWidth {
        level: usize,
        expected: usize,
        found: usize,
    },
    #[error("size mismatch: expected {expected}, found {found}")]
    Size { expected: u32, found: u32 },
    #[error("{0} is odd; symplectic partitions need an even size")]
    OddSize(u32),
    #[error("invalid multiplicity function: {0}")]
    Multiplicity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("q = {0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("{what} = {value} exceeds the cap {cap}")]
    Cap {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("coefficient {0} is not an element of the field")]
    BadCoefficient(u32),
    #[error("polynomial is not monic or is zero")]
    NotMonic,
    #[error("polynomial is divisible by x")]
    DivisibleByX,
    #[error("polynomial is not irreducible and not a product of a star pair")]
    NotElementaryDivisor,
    #[error("polynomials over different fields (q = {0} and q = {1})")]
    FieldMismatch(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("n = {0} must be at least 1")]
    RankTooSmall(u32),
    #[error("invalid block label: {0}")]
    InvalidBlock(String),
    #[error("label does not fit its block: {0}")]
    LabelMismatch(String),
    #[error("weight assignment has total weight {found}, expected {expected}")]
    AssignmentWeight { expected: u32, found: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Block(#[from] BlockError),
    /// Equal-size fixed sets are what makes an equivariant matching possible;
    /// a mismatch here falsifies the count identity.
    #[error(
        "delta-fixed counts differ for w = {w}: {brauer_fixed} Brauer labels vs {weight_fixed} weight labels"
    )]
    FixedCountMismatch {
        w: u32,
        brauer_fixed: usize,
        weight_fixed: usize,
    },
    #[error("label counts differ for w = {w}: {brauer} Brauer labels vs {weight} weight labels")]
    CountMismatch { w: u32, brauer: usize, weight: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("factor exponent pattern {step}*k + {offset} is not positive for every k >= 1")]
    NonPositiveExponent { step: u64, offset: i64 },
}
