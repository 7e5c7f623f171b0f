use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{BlockError, FieldError};
use crate::ffpoly::{DivisorClass, ElementaryDivisor, FieldContext, FqPoly};

/// A 2-block of `Sp(2n, q)`, given by the multiplicity function of a
/// semisimple 2'-class of `SO(2n+1, q)` on its elementary divisors.
///
/// `m(x-1)` is odd and stored separately; `parts` lists the remaining
/// divisors (all in `F1 ∪ F2`, all with odd-order roots) in increasing order.
#[derive(Clone, Debug)]
pub struct BlockLabel {
    ctx: FieldContext,
    n: u32,
    m_x_minus_1: u32,
    parts: Vec<(Arc<ElementaryDivisor>, u32)>,
}

impl BlockLabel {
    pub fn new(
        ctx: &FieldContext,
        n: u32,
        m_x_minus_1: u32,
        parts: Vec<(Arc<ElementaryDivisor>, u32)>,
    ) -> Result<Self, BlockError> {
        if n == 0 {
            return Err(BlockError::RankTooSmall(n));
        }
        if m_x_minus_1.is_multiple_of(2) {
            return Err(BlockError::InvalidBlock(format!("m(x-1) = {m_x_minus_1} must be odd")));
        }
        let mut parts = parts;
        parts.sort();
        for (d, m) in &parts {
            if d.poly().q() != ctx.q() {
                return Err(FieldError::FieldMismatch(d.poly().q() as u64, ctx.q() as u64).into());
            }
            if !matches!(d.class(), DivisorClass::F1 | DivisorClass::F2) {
                return Err(BlockError::InvalidBlock(format!("{d} may not appear among the parts")));
            }
            if !d.has_odd_order_roots() {
                return Err(BlockError::InvalidBlock(format!("roots of {d} have even order")));
            }
            if *m == 0 {
                return Err(BlockError::InvalidBlock(format!("{d} has multiplicity 0")));
            }
        }
        if parts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(BlockError::InvalidBlock("repeated divisor".into()));
        }
        let total = m_x_minus_1 + parts.iter().map(|(d, m)| d.degree() * m).sum::<u32>();
        if total != 2 * n + 1 {
            return Err(BlockError::InvalidBlock(format!(
                "degrees sum to {total}, expected {}",
                2 * n + 1
            )));
        }
        Ok(Self {
            ctx: ctx.clone(),
            n,
            m_x_minus_1,
            parts,
        })
    }

    pub fn principal(ctx: &FieldContext, n: u32) -> Result<Self, BlockError> {
        Self::new(ctx, n, 2 * n + 1, Vec::new())
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m_x_minus_1(&self) -> u32 {
        self.m_x_minus_1
    }

    /// `w(x-1) = (m(x-1) - 1) / 2`.
    pub fn w_x_minus_1(&self) -> u32 {
        (self.m_x_minus_1 - 1) / 2
    }

    pub fn parts(&self) -> &[(Arc<ElementaryDivisor>, u32)] {
        &self.parts
    }

    /// Weights `w_Γ = m_Γ` of the non-symplectic parts, aligned with
    /// [`BlockLabel::parts`].
    pub fn gl_weights(&self) -> Vec<u32> {
        self.parts.iter().map(|&(_, m)| m).collect()
    }

    pub fn is_principal(&self) -> bool {
        self.parts.is_empty()
    }

    /// The block of the twisted class: every divisor key replaced by its
    /// Frobenius twist by `k`. Also returns, for each position of the
    /// result, the position in `self` it came from.
    pub fn twist_with_permutation(&self, k: i64) -> (Self, Vec<usize>) {
        let mut twisted: Vec<((Arc<ElementaryDivisor>, u32), usize)> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, (d, m))| ((Arc::new(self.ctx.frobenius_twist(d, k)), *m), i))
            .collect();
        twisted.sort();
        let (parts, perm) = twisted.into_iter().unzip();
        (
            Self {
                parts,
                ..self.clone()
            },
            perm,
        )
    }

    pub fn twist(&self, k: i64) -> Self {
        self.twist_with_permutation(k).0
    }

    /// The smallest `k >= 1` with `twist(k) = self`; divides `e`.
    pub fn twist_stabilizer_order(&self) -> u32 {
        (1..=self.ctx.e()).find(|&k| self.twist(k as i64) == *self).unwrap_or(self.ctx.e())
    }

    pub fn centralizer_shape(&self) -> CentralizerShape {
        let q = self.ctx.q() as u64;
        let mut factors = vec![CentralizerFactor {
            kind: FactorKind::Sp,
            rank: self.m_x_minus_1 - 1,
            q,
            exponent: 1,
        }];
        for (d, m) in &self.parts {
            factors.push(CentralizerFactor {
                kind: if d.eps() < 0 { FactorKind::GU } else { FactorKind::GL },
                rank: *m,
                q,
                exponent: d.delta(),
            });
        }
        CentralizerShape { factors }
    }

    fn key(&self) -> (u32, u32, std::cmp::Reverse<u32>, &[(Arc<ElementaryDivisor>, u32)]) {
        (self.ctx.q(), self.n, std::cmp::Reverse(self.m_x_minus_1), &self.parts)
    }
}

impl PartialEq for BlockLabel {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for BlockLabel {}

impl std::hash::Hash for BlockLabel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

/// Principal-like blocks (larger `m(x-1)`) first, then by parts.
impl Ord for BlockLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for BlockLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{x-1: {}", self.m_x_minus_1)?;
        for (d, m) in &self.parts {
            write!(f, ", {d}: {m}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize)]
struct PartRecord<'a> {
    divisor: &'a ElementaryDivisor,
    m: u32,
    w: u32,
}

impl Serialize for BlockLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BlockLabel", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("q", &self.ctx.q())?;
        st.serialize_field("m_x_minus_1", &self.m_x_minus_1)?;
        st.serialize_field("w_x_minus_1", &self.w_x_minus_1())?;
        let parts: Vec<PartRecord> = self
            .parts
            .iter()
            .map(|(d, m)| PartRecord { divisor: d, m: *m, w: *m })
            .collect();
        st.serialize_field("parts", &parts)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    Sp,
    GL,
    GU,
}

/// `Sp_rank(q)`, or `GL_rank(q^exponent)` / `GU_rank(q^exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerFactor {
    pub kind: FactorKind,
    pub rank: u32,
    pub q: u64,
    pub exponent: u32,
}

impl fmt::Display for CentralizerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}({}", self.kind, self.rank, self.q)?;
        if self.exponent > 1 {
            write!(f, "^{}", self.exponent)?;
        }
        f.write_str(")")
    }
}

/// The dual of the centraliser of the semisimple class, factor by factor:
/// first the symplectic factor, then one factor per part of the block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralizerShape {
    pub factors: Vec<CentralizerFactor>,
}

impl fmt::Display for CentralizerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for factor in &self.factors {
            if !first {
                f.write_str(" × ")?;
            }
            first = false;
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

fn check_block_caps(ctx: &FieldContext, n: u32) -> Result<(), BlockError> {
    if n == 0 {
        return Err(BlockError::RankTooSmall(n));
    }
    let caps = ctx.caps();
    if n > caps.max_block_rank {
        return Err(FieldError::Cap {
            what: "n",
            value: n as u64,
            cap: caps.max_block_rank as u64,
        }
        .into());
    }
    if ctx.q() as u64 > caps.max_block_q {
        return Err(FieldError::Cap {
            what: "q",
            value: ctx.q() as u64,
            cap: caps.max_block_q,
        }
        .into());
    }
    Ok(())
}

/// Every 2-block of `Sp(2n, q)`, in [`BlockLabel`] order.
pub fn enum_blocks(ctx: &FieldContext, n: u32) -> Result<Vec<BlockLabel>, BlockError> {
    check_block_caps(ctx, n)?;
    let divisors: Vec<Arc<ElementaryDivisor>> = ctx
        .divisors(2 * n, true)?
        .into_iter()
        .filter(|d| d.class() != DivisorClass::XMinus1)
        .map(Arc::new)
        .collect();
    let mut out = Vec::new();
    for m in (1..=2 * n + 1).step_by(2) {
        let mut current = Vec::new();
        fill(&divisors, 0, 2 * n + 1 - m, &mut current, &mut |parts| {
            out.push(BlockLabel {
                ctx: ctx.clone(),
                n,
                m_x_minus_1: m,
                parts: parts.to_vec(),
            });
        });
    }
    out.sort();
    Ok(out)
}

/// Calls `emit` with every multiplicity function on `divisors[start..]` of
/// total degree `remaining` (divisors sorted by degree).
fn fill(
    divisors: &[Arc<ElementaryDivisor>],
    start: usize,
    remaining: u32,
    current: &mut Vec<(Arc<ElementaryDivisor>, u32)>,
    emit: &mut impl FnMut(&[(Arc<ElementaryDivisor>, u32)]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    for (i, d) in divisors.iter().enumerate().skip(start) {
        let deg = d.degree();
        if deg > remaining {
            break;
        }
        for m in 1..=remaining / deg {
            current.push((d.clone(), m));
            fill(divisors, i + 1, remaining - deg * m, current, emit);
            current.pop();
        }
    }
}

/// Looks up a divisor for a block label given as polynomial coefficients.
pub fn divisor_from_coeffs(ctx: &FieldContext, coeffs: Vec<u32>) -> Result<Arc<ElementaryDivisor>, BlockError> {
    let poly = FqPoly::new(ctx.field(), coeffs)?;
    Ok(Arc::new(ctx.classify(&poly)?))
}
