//! Integer partitions with an abacus engine for e-cores, e-quotients and
//! 2-core towers.
//!
//! Abacus convention: a partition with at most `t` parts is encoded by the
//! beta-set `{ p_i + t - i : 1 <= i <= t }`, where `t` is the least multiple
//! of `2e` that is at least the number of parts. Runner `r` holds the
//! beta-numbers congruent to `r` modulo `e`, and quotient component `r` is the
//! partition read off runner `r`. Any bead count that is a multiple of `e`
//! gives the same quotient, so the convention is stable under padding.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PartitionError;

/// A weakly decreasing finite sequence of positive integers.
///
/// Partitions are ordered first by size and then lexicographically on their
/// parts, so `(1,1,1) < (2,1) < (3) < (1,1,1,1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zeros; never fails.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The staircase `(k, k-1, ..., 1)`. These are exactly the 2-cores.
    pub fn staircase(k: u32) -> Self {
        Self {
            parts: (1..=k).rev().collect(),
        }
    }

    /// The unique 2-core of size `n`, if `n` is triangular.
    pub fn two_core_of_size(n: u32) -> Option<Self> {
        let mut k = 0u32;
        while k * (k + 1) / 2 < n {
            k += 1;
        }
        (k * (k + 1) / 2 == n).then(|| Self::staircase(k))
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == i).count() as u32
    }

    /// Beta-set with `t` beads, in decreasing order.
    ///
    /// Panics if `t` is smaller than the number of parts.
    pub fn beta_set(&self, t: usize) -> Vec<u32> {
        assert!(t >= self.len(), "beta-set needs at least as many beads as parts");
        (0..t)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) + (t - 1 - i) as u32)
            .collect()
    }

    /// Inverse of [`Partition::beta_set`]; the beads may be given in any order.
    pub fn from_beta_set(beads: &[u32]) -> Self {
        let mut sorted = beads.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(sorted.windows(2).all(|w| w[0] > w[1]), "repeated bead");
        let t = sorted.len();
        Self::from_unsorted(
            sorted
                .iter()
                .enumerate()
                .map(|(i, &b)| b - (t - 1 - i) as u32)
                .collect(),
        )
    }

    pub fn is_core(&self, e: u32) -> bool {
        e_core(self, e) == *self
    }

    pub fn is_two_core(&self) -> bool {
        self.parts
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == self.len() - i)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        f.write_str("(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n`, lexicographically increasing on their parts.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(n, n, &mut cur, &mut out);
    out
}

fn fill_partitions(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for k in 1..=rest.min(max) {
        cur.push(k);
        fill_partitions(rest - k, k, cur, out);
        cur.pop();
    }
}

/// `table[k]` is `partitions_of(k)` for `k <= n`.
pub fn partitions_up_to(n: u32) -> Vec<Vec<Partition>> {
    (0..=n).map(partitions_of).collect()
}

/// An e-core together with its e-quotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoreQuotient {
    pub core: Partition,
    pub quotient: Vec<Partition>,
}

impl CoreQuotient {
    pub fn quotient_size(&self) -> u32 {
        self.quotient.iter().map(Partition::size).sum()
    }
}

fn bead_count(len: usize, e: u32) -> usize {
    let m = 2 * e as usize;
    len.div_ceil(m) * m
}

/// Beads per runner, each runner listing its levels in decreasing order.
fn runners(beads: &[u32], e: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); e as usize];
    for &b in beads {
        out[(b % e) as usize].push(b / e);
    }
    for r in &mut out {
        r.sort_unstable_by(|a, b| b.cmp(a));
    }
    out
}

/// The e-core: slide every bead as far up its runner as it goes.
pub fn e_core(p: &Partition, e: u32) -> Partition {
    assert!(e >= 1, "e must be positive");
    let t = bead_count(p.len(), e);
    let rs = runners(&p.beta_set(t), e);
    let beads: Vec<u32> = rs
        .iter()
        .enumerate()
        .flat_map(|(r, levels)| (0..levels.len() as u32).map(move |k| r as u32 + e * k))
        .collect();
    Partition::from_beta_set(&beads)
}

pub fn e_quotient(p: &Partition, e: u32) -> CoreQuotient {
    assert!(e >= 1, "e must be positive");
    let t = bead_count(p.len(), e);
    let rs = runners(&p.beta_set(t), e);
    let quotient = rs
        .iter()
        .map(|levels| Partition::from_beta_set(levels))
        .collect();
    CoreQuotient {
        core: e_core(p, e),
        quotient,
    }
}

pub fn from_core_and_quotient(cq: &CoreQuotient, e: u32) -> Result<Partition, PartitionError> {
    assert!(e >= 1, "e must be positive");
    if cq.quotient.len() != e as usize {
        return Err(PartitionError::QuotientLength {
            expected: e as usize,
            found: cq.quotient.len(),
        });
    }
    if !cq.core.is_core(e) {
        return Err(PartitionError::NotACore {
            partition: cq.core.clone(),
            e,
        });
    }
    let mut t = bead_count(cq.core.len(), e);
    let counts = loop {
        let counts: Vec<usize> = runners(&cq.core.beta_set(t), e)
            .iter()
            .map(Vec::len)
            .collect();
        if counts.iter().zip(&cq.quotient).all(|(&c, q)| c >= q.len()) {
            break counts;
        }
        t += 2 * e as usize;
    };
    let mut beads = Vec::with_capacity(t);
    for (r, (q, &c)) in cq.quotient.iter().zip(&counts).enumerate() {
        for level in q.beta_set(c) {
            beads.push(r as u32 + e * level);
        }
    }
    Ok(Partition::from_beta_set(&beads))
}

/// The recursive tree of 2-cores obtained by iterating 2-quotients.
///
/// Level `d` holds `2^d` two-cores. Levels past the last non-empty one are
/// dropped, except that level 0 is always present.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Partition>>", into = "Vec<Vec<Partition>>")]
pub struct TwoCoreTower {
    levels: Vec<Vec<Partition>>,
}

impl TwoCoreTower {
    /// Validates shape and that every entry is a 2-core. Trailing empty
    /// levels are trimmed.
    pub fn new(mut levels: Vec<Vec<Partition>>) -> Result<Self, PartitionError> {
        if levels.is_empty() {
            levels.push(vec![Partition::empty()]);
        }
        for (d, level) in levels.iter().enumerate() {
            if level.len() != 1usize << d {
                return Err(PartitionError::TowerLevelWidth {
                    level: d,
                    expected: 1usize << d,
                    found: level.len(),
                });
            }
            if let Some(bad) = level.iter().find(|k| !k.is_two_core()) {
                return Err(PartitionError::NotACore {
                    partition: bad.clone(),
                    e: 2,
                });
            }
        }
        Ok(Self::trimmed(levels))
    }

    fn trimmed(mut levels: Vec<Vec<Partition>>) -> Self {
        while levels.len() > 1 && levels.last().unwrap().iter().all(Partition::is_empty) {
            levels.pop();
        }
        Self { levels }
    }

    /// The tower of the empty partition.
    pub fn empty() -> Self {
        Self {
            levels: vec![vec![Partition::empty()]],
        }
    }

    pub fn levels(&self) -> &[Vec<Partition>] {
        &self.levels
    }

    /// Level `d`, padded with empty cores past the stored depth.
    pub fn level(&self, d: usize) -> Vec<Partition> {
        self.levels
            .get(d)
            .cloned()
            .unwrap_or_else(|| vec![Partition::empty(); 1 << d])
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.levels.iter().flatten().all(Partition::is_empty)
    }

    pub fn weight(&self) -> u32 {
        self.levels
            .iter()
            .enumerate()
            .map(|(d, level)| (1u32 << d) * level.iter().map(Partition::size).sum::<u32>())
            .sum()
    }

    /// Rebuilds a tower from its level-0 core and the towers of the two
    /// quotient components.
    fn join(core: Partition, left: &TwoCoreTower, right: &TwoCoreTower) -> Self {
        let depth = 1 + left.levels.len().max(right.levels.len());
        let mut levels = vec![vec![core]];
        for d in 1..depth {
            let mut level = left.level(d - 1);
            level.extend(right.level(d - 1));
            levels.push(level);
        }
        Self::trimmed(levels)
    }

    /// Splits off the two subtrees hanging below level 0.
    fn split(&self) -> (Partition, TwoCoreTower, TwoCoreTower) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for level in &self.levels[1..] {
            let half = level.len() / 2;
            left.push(level[..half].to_vec());
            right.push(level[half..].to_vec());
        }
        (
            self.levels[0][0].clone(),
            Self::trimmed(if left.is_empty() { vec![vec![Partition::empty()]] } else { left }),
            Self::trimmed(if right.is_empty() { vec![vec![Partition::empty()]] } else { right }),
        )
    }
}

/// Lexicographic on levels.
impl Ord for TwoCoreTower {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.levels.cmp(&other.levels)
    }
}

impl PartialOrd for TwoCoreTower {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<Vec<Partition>>> for TwoCoreTower {
    type Error = PartitionError;

    fn try_from(levels: Vec<Vec<Partition>>) -> Result<Self, Self::Error> {
        Self::new(levels)
    }
}

impl From<TwoCoreTower> for Vec<Vec<Partition>> {
    fn from(t: TwoCoreTower) -> Self {
        t.levels
    }
}

/// Level 0 is the 2-core; level `d` concatenates level `d-1` of the towers
/// of the first and second 2-quotient components.
pub fn two_core_tower(p: &Partition) -> TwoCoreTower {
    if p.is_empty() {
        return TwoCoreTower::empty();
    }
    let cq = e_quotient(p, 2);
    let left = two_core_tower(&cq.quotient[0]);
    let right = two_core_tower(&cq.quotient[1]);
    TwoCoreTower::join(cq.core, &left, &right)
}

pub fn tower_to_partition(t: &TwoCoreTower) -> Result<Partition, PartitionError> {
    // Re-validate: towers built through serde or `new` are already checked,
    // but the recursion below relies on the shape.
    let t = TwoCoreTower::new(t.levels.clone())?;
    if t.is_empty() {
        return Ok(Partition::empty());
    }
    let (core, left, right) = t.split();
    let cq = CoreQuotient {
        core,
        quotient: vec![tower_to_partition(&left)?, tower_to_partition(&right)?],
    };
    from_core_and_quotient(&cq, 2)
}
