use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::blocks::block::BlockLabel;
use crate::error::BlockError;
use crate::partitions::{partitions_of, Partition};
use crate::symplectic::{dagger, delta_on_scu, enum_scu, enum_sct, for_each_scu, for_each_sct, ScTElement, ScUElement};

/// The label of the unipotent block of the symplectic factor: `scU(w)` on
/// the Brauer side, `scT(w)` on the weight side.
pub trait SymplecticPart: Clone + Ord + Hash + Debug + Serialize {
    const KIND: &'static str;
    fn rank(&self) -> u32;
    /// The action of the diagonal automorphism.
    fn delta(&self) -> Self;
    fn enumerate(w: u32) -> Vec<Self>;
    fn count(w: u32) -> u64;
}

impl SymplecticPart for ScUElement {
    const KIND: &'static str = "brauer";

    fn rank(&self) -> u32 {
        self.n()
    }

    fn delta(&self) -> Self {
        delta_on_scu(self)
    }

    fn enumerate(w: u32) -> Vec<Self> {
        enum_scu(w)
    }

    fn count(w: u32) -> u64 {
        let mut c = 0;
        for_each_scu(w, |_| c += 1);
        c
    }
}

impl SymplecticPart for ScTElement {
    const KIND: &'static str = "weight";

    fn rank(&self) -> u32 {
        self.size()
    }

    fn delta(&self) -> Self {
        dagger(self)
    }

    fn enumerate(w: u32) -> Vec<Self> {
        enum_sct(w)
    }

    fn count(w: u32) -> u64 {
        let mut c = 0;
        for_each_sct(w, |_| c += 1);
        c
    }
}

/// A label inside a block: the symplectic part for the `x-1` component and
/// one partition of `m_Γ` per further part, aligned with the block's parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockwiseLabel<S> {
    block: Arc<BlockLabel>,
    symplectic: S,
    gl: Vec<Partition>,
}

pub type BrauerLabel = BlockwiseLabel<ScUElement>;
pub type WeightLabel = BlockwiseLabel<ScTElement>;

/// A label of the unipotent block of the centraliser dual, with GL parts
/// aligned with the factors of [`BlockLabel::centralizer_shape`] after the
/// symplectic one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct UnipotentLabel<S> {
    pub symplectic: S,
    pub gl: Vec<Partition>,
}

impl<S: SymplecticPart> BlockwiseLabel<S> {
    pub fn new(block: Arc<BlockLabel>, symplectic: S, gl: Vec<Partition>) -> Result<Self, BlockError> {
        if symplectic.rank() != block.w_x_minus_1() {
            return Err(BlockError::LabelMismatch(format!(
                "symplectic part has rank {}, block needs {}",
                symplectic.rank(),
                block.w_x_minus_1()
            )));
        }
        let sizes: Vec<u32> = gl.iter().map(Partition::size).collect();
        if sizes != block.gl_weights() {
            return Err(BlockError::LabelMismatch(format!(
                "GL parts have sizes {sizes:?}, block needs {:?}",
                block.gl_weights()
            )));
        }
        Ok(Self { block, symplectic, gl })
    }

    pub fn block(&self) -> &Arc<BlockLabel> {
        &self.block
    }

    pub fn symplectic(&self) -> &S {
        &self.symplectic
    }

    pub fn gl(&self) -> &[Partition] {
        &self.gl
    }

    pub fn to_unipotent(&self) -> UnipotentLabel<S> {
        UnipotentLabel {
            symplectic: self.symplectic.clone(),
            gl: self.gl.clone(),
        }
    }

    /// Diagonal automorphism: acts on the symplectic part only.
    pub fn act_delta(&self) -> Self {
        Self {
            block: self.block.clone(),
            symplectic: self.symplectic.delta(),
            gl: self.gl.clone(),
        }
    }

    /// Field automorphism: twists the divisor keys of the block and carries
    /// each GL partition along with its divisor.
    pub fn act_field(&self, k: i64) -> Self {
        let (block, perm) = self.block.twist_with_permutation(k);
        Self {
            block: Arc::new(block),
            symplectic: self.symplectic.clone(),
            gl: perm.iter().map(|&i| self.gl[i].clone()).collect(),
        }
    }
}

impl<S: SymplecticPart> Serialize for BlockwiseLabel<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct GlPart<'a> {
            divisor: &'a crate::ffpoly::FqPoly,
            partition: &'a Partition,
        }
        let gl: Vec<GlPart> = self
            .block
            .parts()
            .iter()
            .zip(&self.gl)
            .map(|((d, _), p)| GlPart {
                divisor: d.poly(),
                partition: p,
            })
            .collect();
        let mut st = s.serialize_struct("BlockwiseLabel", 2)?;
        st.serialize_field("symplectic", &self.symplectic)?;
        st.serialize_field("gl", &gl)?;
        st.end()
    }
}

/// All tuples with entries from `lists`, last position varying fastest.
fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// The full product `S(w(x-1)) × ∏ P(m_Γ)`, in increasing order.
pub fn enum_labels<S: SymplecticPart>(block: &Arc<BlockLabel>) -> Vec<BlockwiseLabel<S>> {
    let gl_lists: Vec<Vec<Partition>> = block.gl_weights().into_iter().map(partitions_of).collect();
    let gl_tuples = cartesian(&gl_lists);
    S::enumerate(block.w_x_minus_1())
        .into_iter()
        .flat_map(|s| {
            gl_tuples.iter().map(move |gl| BlockwiseLabel {
                block: block.clone(),
                symplectic: s.clone(),
                gl: gl.clone(),
            })
        })
        .collect()
}

pub fn enum_brauer_labels(block: &Arc<BlockLabel>) -> Vec<BrauerLabel> {
    enum_labels(block)
}

pub fn enum_weight_labels(block: &Arc<BlockLabel>) -> Vec<WeightLabel> {
    enum_labels(block)
}

/// `|S(w(x-1))| · ∏ p(m_Γ)` without materialising the labels.
pub fn label_count<S: SymplecticPart>(block: &BlockLabel) -> u64 {
    block
        .gl_weights()
        .into_iter()
        .map(|m| partitions_of(m).len() as u64)
        .product::<u64>()
        * S::count(block.w_x_minus_1())
}

/// Jordan decomposition at label level: the unipotent label of the
/// centraliser dual is repackaged as a label of the block.
pub fn jordan<S: SymplecticPart>(block: &Arc<BlockLabel>, label: UnipotentLabel<S>) -> Result<BlockwiseLabel<S>, BlockError> {
    BlockwiseLabel::new(block.clone(), label.symplectic, label.gl)
}

pub fn jordan_brauer(block: &Arc<BlockLabel>, label: UnipotentLabel<ScUElement>) -> Result<BrauerLabel, BlockError> {
    jordan(block, label)
}

pub fn jordan_weights(block: &Arc<BlockLabel>, label: UnipotentLabel<ScTElement>) -> Result<WeightLabel, BlockError> {
    jordan(block, label)
}
