use std::sync::Arc;

use serde::Serialize;

use crate::blocks::block::BlockLabel;
use crate::blocks::labels::WeightLabel;
use crate::error::{BlockError, PartitionError};
use crate::ffpoly::DivisorClass;
use crate::partitions::{tower_to_partition, two_core_tower, Partition, TwoCoreTower};
use crate::symplectic::ScTElement;

/// Weight data of a block spelled out slot by slot: two core towers and one
/// extra 2-core for `x-1`, one core tower per further part.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WeightAssignment {
    #[serde(skip)]
    pub block: Arc<BlockLabel>,
    pub family1: TwoCoreTower,
    pub family2: TwoCoreTower,
    pub kappa_extra: Partition,
    pub gl: Vec<TwoCoreTower>,
}

impl WeightAssignment {
    /// Total weight carried by the `x-1` slots.
    pub fn symplectic_weight(&self) -> u32 {
        self.family1.weight() + self.family2.weight() + self.kappa_extra.size()
    }
}

pub fn expand_weight(w: &WeightLabel) -> WeightAssignment {
    let s = w.symplectic();
    WeightAssignment {
        block: w.block().clone(),
        family1: two_core_tower(&s.lambda1),
        family2: two_core_tower(&s.lambda2),
        kappa_extra: s.kappa.clone(),
        gl: w.gl().iter().map(two_core_tower).collect(),
    }
}

pub fn contract_assignment(a: &WeightAssignment) -> Result<WeightLabel, BlockError> {
    let block = &a.block;
    if !a.kappa_extra.is_two_core() {
        return Err(PartitionError::NotACore {
            partition: a.kappa_extra.clone(),
            e: 2,
        }
        .into());
    }
    if a.symplectic_weight() != block.w_x_minus_1() {
        return Err(BlockError::AssignmentWeight {
            expected: block.w_x_minus_1(),
            found: a.symplectic_weight(),
        });
    }
    if a.gl.len() != block.parts().len() {
        return Err(BlockError::LabelMismatch(format!(
            "{} GL towers for {} parts",
            a.gl.len(),
            block.parts().len()
        )));
    }
    for (t, (_, m)) in a.gl.iter().zip(block.parts()) {
        if t.weight() != *m {
            return Err(BlockError::AssignmentWeight {
                expected: *m,
                found: t.weight(),
            });
        }
    }
    let symplectic = ScTElement::new(
        tower_to_partition(&a.family1)?,
        tower_to_partition(&a.family2)?,
        a.kappa_extra.clone(),
    )?;
    let gl = a.gl.iter().map(tower_to_partition).collect::<Result<_, _>>()?;
    WeightLabel::new(block.clone(), symplectic, gl)
}

/// The diagonal automorphism on slots: family 1 and the GL towers are
/// fixed; in family 2, level `d >= 1` swaps entry `j` with `j + 2^{d-1}`,
/// and the level-0 entry trades places with the extra core.
pub fn delta_on_assignment(a: &WeightAssignment) -> WeightAssignment {
    let mut levels: Vec<Vec<Partition>> = a.family2.levels().to_vec();
    let old_core = std::mem::replace(&mut levels[0][0], a.kappa_extra.clone());
    for level in levels.iter_mut().skip(1) {
        let half = level.len() / 2;
        level.rotate_left(half);
    }
    WeightAssignment {
        family2: TwoCoreTower::new(levels).expect("permuting slots keeps the tower shape"),
        kappa_extra: old_core,
        ..a.clone()
    }
}

/// For the characters attached to divisors of class `class` at level `d`:
/// the number fixed by the diagonal automorphism and the number of
/// two-element orbits.
pub fn weight_character_count(class: DivisorClass, d: u32) -> (u64, u64) {
    match class {
        DivisorClass::F1 | DivisorClass::F2 => (1 << d, 0),
        DivisorClass::XMinus1 | DivisorClass::XPlus1 if d == 0 => (1, 1),
        DivisorClass::XMinus1 | DivisorClass::XPlus1 => (1 << d, 1 << (d - 1)),
    }
}

/// Total number of characters at level `d`.
pub fn weight_character_total(class: DivisorClass, d: u32) -> u64 {
    let (fixed, pairs) = weight_character_count(class, d);
    fixed + 2 * pairs
}
