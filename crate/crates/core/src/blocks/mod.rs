//! 2-blocks of `Sp(2n, q)` and the Brauer and weight labels inside them.

mod assignment;
mod block;
mod labels;

pub use assignment::{
    contract_assignment, delta_on_assignment, expand_weight, weight_character_count, weight_character_total,
    WeightAssignment,
};
pub use block::{
    divisor_from_coeffs, enum_blocks, BlockLabel, CentralizerFactor, CentralizerShape, FactorKind,
};
pub use labels::{
    enum_brauer_labels, enum_labels, enum_weight_labels, jordan, jordan_brauer, jordan_weights, label_count,
    BlockwiseLabel, BrauerLabel, SymplecticPart, UnipotentLabel, WeightLabel,
};
