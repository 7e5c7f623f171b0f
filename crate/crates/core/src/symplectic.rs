//! Labelling sets for the unipotent 2-block of `Sp(2n, q)`.
//!
//! * `scU(n)`: multiplicity functions `m` with `sum j*m(j) = 2n` and `m(j)`
//!   even for odd `j`, each counted `2^{k_m}` times where `k_m` is the number
//!   of even `j` in the support. These label unipotent classes, and through
//!   them the Brauer characters.
//! * `scT(m)`: triples `(lambda1, lambda2, kappa)` with `kappa` a 2-core and
//!   total size `m`. These label weights.
//! * `scT'(m)`: 5-tuples `(lambda1, lambda2, lambda3, kappa1, kappa2)` with
//!   `|lambda1| + 2(|lambda2| + |lambda3|) + |kappa1| + |kappa2| = m`, in
//!   bijection with `scT(m)` by splitting `lambda2` into 2-core and 2-quotient.
//!
//! Enumeration order: `scU` elements compare lexicographically on the dense
//! vector `(m(1), m(2), ..., m(2n))` and then on the copy index; `scT` and
//! `scT'` tuples compare lexicographically, componentwise in the
//! [`Partition`] order (size first, then parts).

use serde::{Deserialize, Serialize};

use crate::error::PartitionError;
use crate::partitions::{e_quotient, from_core_and_quotient, partitions_of, CoreQuotient, Partition};

/// One of the `2^{k_m}` copies of a multiplicity function in `scU(n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScUElement {
    n: u32,
    /// `mult[j - 1] = m(j)` for `1 <= j <= 2n`.
    mult: Vec<u32>,
    copy: u32,
}

impl ScUElement {
    pub fn new(n: u32, support: &[(u32, u32)], copy: u32) -> Result<Self, PartitionError> {
        let mut mult = vec![0u32; 2 * n as usize];
        for &(j, m) in support {
            if j == 0 || j > 2 * n {
                return Err(PartitionError::Multiplicity(format!("part {j} out of range for n = {n}")));
            }
            mult[j as usize - 1] += m;
        }
        let x = Self { n, mult, copy };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<(), PartitionError> {
        let total: u32 = self.support().map(|(j, m)| j * m).sum();
        if total != 2 * self.n {
            return Err(PartitionError::Size {
                expected: 2 * self.n,
                found: total,
            });
        }
        if let Some((j, m)) = self.support().find(|&(j, m)| j % 2 == 1 && m % 2 == 1) {
            return Err(PartitionError::Multiplicity(format!(
                "odd part {j} has odd multiplicity {m}"
            )));
        }
        if self.copy == 0 || self.copy > self.copies() {
            return Err(PartitionError::Multiplicity(format!(
                "copy index {} outside 1..={}",
                self.copy,
                self.copies()
            )));
        }
        Ok(())
    }

    /// The element of `scU(n)` attached to a symplectic partition of `2n`.
    pub fn from_partition(lambda: &Partition, copy: u32) -> Result<Self, PartitionError> {
        if lambda.size() % 2 == 1 {
            return Err(PartitionError::OddSize(lambda.size()));
        }
        let n = lambda.size() / 2;
        let mut mult = vec![0u32; 2 * n as usize];
        for &x in lambda.parts() {
            mult[x as usize - 1] += 1;
        }
        let x = Self { n, mult, copy };
        x.validate()?;
        Ok(x)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn copy(&self) -> u32 {
        self.copy
    }

    pub fn multiplicity(&self, j: u32) -> u32 {
        if j == 0 {
            return 0;
        }
        self.mult.get(j as usize - 1).copied().unwrap_or(0)
    }

    /// `(j, m(j))` for `m(j) != 0`, increasing in `j`.
    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| (i as u32 + 1, m))
    }

    /// Number of even `j` with `m(j) != 0`.
    pub fn k(&self) -> u32 {
        self.support().filter(|(j, _)| j % 2 == 0).count() as u32
    }

    pub fn copies(&self) -> u32 {
        1 << self.k()
    }

    /// Membership in `scU_1(n)`: every multiplicity even.
    pub fn is_even(&self) -> bool {
        self.mult.iter().all(|m| m % 2 == 0)
    }

    /// The partition of `2n` with `m(j)` parts equal to `j`.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (j, m) in self.support() {
            parts.extend(std::iter::repeat_n(j, m as usize));
        }
        Partition::from_unsorted(parts)
    }
}

#[derive(Serialize, Deserialize)]
struct ScUElementRepr {
    n: u32,
    multiplicities: Vec<(u32, u32)>,
    copy: u32,
}

impl Serialize for ScUElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScUElementRepr {
            n: self.n,
            multiplicities: self.support().collect(),
            copy: self.copy,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScUElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ScUElementRepr::deserialize(d)?;
        Self::new(r.n, &r.multiplicities, r.copy).map_err(serde::de::Error::custom)
    }
}

/// Visits `scU(n)` in enumeration order.
pub fn for_each_scu(n: u32, mut f: impl FnMut(&ScUElement)) {
    let two_n = 2 * n;
    let mut x = ScUElement {
        n,
        mult: vec![0; two_n as usize],
        copy: 1,
    };
    fill_scu(&mut x, 1, two_n, false, &mut f);
}

/// Visits `scU_1(n)` in enumeration order.
pub fn for_each_scu1(n: u32, mut f: impl FnMut(&ScUElement)) {
    let two_n = 2 * n;
    let mut x = ScUElement {
        n,
        mult: vec![0; two_n as usize],
        copy: 1,
    };
    fill_scu(&mut x, 1, two_n, true, &mut f);
}

fn fill_scu(x: &mut ScUElement, j: u32, rest: u32, even_only: bool, f: &mut impl FnMut(&ScUElement)) {
    if rest == 0 {
        for copy in 1..=x.copies() {
            x.copy = copy;
            f(x);
        }
        x.copy = 1;
        return;
    }
    if j > 2 * x.n {
        return;
    }
    let step = if even_only || j % 2 == 1 { 2 } else { 1 };
    let mut m = 0;
    while m * j <= rest {
        x.mult[j as usize - 1] = m;
        fill_scu(x, j + 1, rest - m * j, even_only, f);
        m += step;
    }
    x.mult[j as usize - 1] = 0;
}

pub fn enum_scu(n: u32) -> Vec<ScUElement> {
    let mut out = Vec::new();
    for_each_scu(n, |x| out.push(x.clone()));
    out
}

pub fn enum_scu1(n: u32) -> Vec<ScUElement> {
    let mut out = Vec::new();
    for_each_scu1(n, |x| out.push(x.clone()));
    out
}

/// Identity on `scU_1(n)`; otherwise swaps copy `i` with copy
/// `((i - 1) xor 2^{k_m - 1}) + 1`.
pub fn delta_on_scu(x: &ScUElement) -> ScUElement {
    if x.is_even() {
        return x.clone();
    }
    let mut y = x.clone();
    y.copy = ((x.copy - 1) ^ (1 << (x.k() - 1))) + 1;
    y
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScTElement {
    pub lambda1: Partition,
    pub lambda2: Partition,
    pub kappa: Partition,
}

impl ScTElement {
    pub fn new(lambda1: Partition, lambda2: Partition, kappa: Partition) -> Result<Self, PartitionError> {
        if !kappa.is_two_core() {
            return Err(PartitionError::NotACore { partition: kappa, e: 2 });
        }
        Ok(Self {
            lambda1,
            lambda2,
            kappa,
        })
    }

    pub fn size(&self) -> u32 {
        self.lambda1.size() + self.lambda2.size() + self.kappa.size()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScTPrimeElement {
    pub lambda1: Partition,
    pub lambda2: Partition,
    pub lambda3: Partition,
    pub kappa1: Partition,
    pub kappa2: Partition,
}

impl ScTPrimeElement {
    pub fn new(
        lambda1: Partition,
        lambda2: Partition,
        lambda3: Partition,
        kappa1: Partition,
        kappa2: Partition,
    ) -> Result<Self, PartitionError> {
        for k in [&kappa1, &kappa2] {
            if !k.is_two_core() {
                return Err(PartitionError::NotACore { partition: k.clone(), e: 2 });
            }
        }
        Ok(Self {
            lambda1,
            lambda2,
            lambda3,
            kappa1,
            kappa2,
        })
    }

    pub fn size(&self) -> u32 {
        self.lambda1.size()
            + 2 * (self.lambda2.size() + self.lambda3.size())
            + self.kappa1.size()
            + self.kappa2.size()
    }

    /// Membership in `scT'_1`: `lambda2 = lambda3` and `kappa1 = kappa2`.
    pub fn is_symmetric(&self) -> bool {
        self.lambda2 == self.lambda3 && self.kappa1 == self.kappa2
    }

    fn swapped(&self) -> Self {
        Self {
            lambda1: self.lambda1.clone(),
            lambda2: self.lambda3.clone(),
            lambda3: self.lambda2.clone(),
            kappa1: self.kappa2.clone(),
            kappa2: self.kappa1.clone(),
        }
    }
}

/// Visits `scT(m)` in enumeration order.
pub fn for_each_sct(m: u32, mut f: impl FnMut(&ScTElement)) {
    let table: Vec<Vec<Partition>> = (0..=m).map(partitions_of).collect();
    let mut x = ScTElement {
        lambda1: Partition::empty(),
        lambda2: Partition::empty(),
        kappa: Partition::empty(),
    };
    for s1 in 0..=m {
        for l1 in &table[s1 as usize] {
            x.lambda1.clone_from(l1);
            for s2 in 0..=m - s1 {
                let Some(kappa) = Partition::two_core_of_size(m - s1 - s2) else {
                    continue;
                };
                x.kappa = kappa;
                for l2 in &table[s2 as usize] {
                    x.lambda2.clone_from(l2);
                    f(&x);
                }
            }
        }
    }
}

pub fn enum_sct(m: u32) -> Vec<ScTElement> {
    let mut out = Vec::new();
    for_each_sct(m, |x| out.push(x.clone()));
    out
}

/// Visits `scT'(m)` in enumeration order.
pub fn for_each_sct_prime(m: u32, mut f: impl FnMut(&ScTPrimeElement)) {
    let table: Vec<Vec<Partition>> = (0..=m).map(partitions_of).collect();
    let cores: Vec<Partition> = (0..=m).filter_map(Partition::two_core_of_size).collect();
    for s1 in 0..=m {
        for l1 in &table[s1 as usize] {
            let r1 = m - s1;
            for s2 in 0..=r1 / 2 {
                for l2 in &table[s2 as usize] {
                    let r2 = r1 - 2 * s2;
                    for s3 in 0..=r2 / 2 {
                        for l3 in &table[s3 as usize] {
                            let r3 = r2 - 2 * s3;
                            for k1 in cores.iter().take_while(|k| k.size() <= r3) {
                                let Some(k2) = Partition::two_core_of_size(r3 - k1.size()) else {
                                    continue;
                                };
                                f(&ScTPrimeElement {
                                    lambda1: l1.clone(),
                                    lambda2: l2.clone(),
                                    lambda3: l3.clone(),
                                    kappa1: k1.clone(),
                                    kappa2: k2,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

pub fn enum_sct_prime(m: u32) -> Vec<ScTPrimeElement> {
    let mut out = Vec::new();
    for_each_sct_prime(m, |x| out.push(x.clone()));
    out
}

/// `scT'_1(m)`, in `scT'` enumeration order.
pub fn enum_sct1_prime(m: u32) -> Vec<ScTPrimeElement> {
    let mut out = Vec::new();
    for_each_sct_prime(m, |x| {
        if x.is_symmetric() {
            out.push(x.clone())
        }
    });
    out
}

/// `(lambda1, lambda2, kappa) -> (lambda1, q0, q1, core, kappa)` where
/// `lambda2` has 2-core `core` and 2-quotient `(q0, q1)`.
pub fn t_to_tprime(x: &ScTElement) -> ScTPrimeElement {
    let cq = e_quotient(&x.lambda2, 2);
    let [q0, q1]: [Partition; 2] = cq.quotient.try_into().expect("2-quotient has two components");
    ScTPrimeElement {
        lambda1: x.lambda1.clone(),
        lambda2: q0,
        lambda3: q1,
        kappa1: cq.core,
        kappa2: x.kappa.clone(),
    }
}

pub fn tprime_to_t(y: &ScTPrimeElement) -> ScTElement {
    let cq = CoreQuotient {
        core: y.kappa1.clone(),
        quotient: vec![y.lambda2.clone(), y.lambda3.clone()],
    };
    ScTElement {
        lambda1: y.lambda1.clone(),
        lambda2: from_core_and_quotient(&cq, 2).expect("kappa1 is a 2-core"),
        kappa: y.kappa2.clone(),
    }
}

/// Swaps `(lambda2, kappa1)` with `(lambda3, kappa2)` in `scT'` coordinates.
pub fn dagger(x: &ScTElement) -> ScTElement {
    tprime_to_t(&t_to_tprime(x).swapped())
}

pub fn delta_on_sct(x: &ScTElement) -> ScTElement {
    dagger(x)
}

/// Whether `x` is fixed by the dagger involution, i.e. lies in the image of
/// `scT'_1`.
pub fn is_dagger_fixed(x: &ScTElement) -> bool {
    let cq = e_quotient(&x.lambda2, 2);
    cq.core == x.kappa && cq.quotient[0] == cq.quotient[1]
}

/// A symplectic partition of `2n` with its component-group rank `a` and
/// the flag `delta` (some even part has odd multiplicity).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticPartition {
    pub lambda: Partition,
    pub a: u32,
    pub delta: bool,
}

impl SymplecticPartition {
    pub fn class_count(&self) -> u64 {
        1 << self.a
    }
}

/// Partitions of `two_n` in which every odd part has even multiplicity,
/// in the order of [`partitions_of`].
pub fn symplectic_partitions(two_n: u32) -> Result<Vec<SymplecticPartition>, PartitionError> {
    if two_n % 2 == 1 {
        return Err(PartitionError::OddSize(two_n));
    }
    Ok(partitions_of(two_n)
        .into_iter()
        .filter_map(|lambda| {
            let mut distinct: Vec<u32> = lambda.parts().to_vec();
            distinct.dedup();
            if distinct
                .iter()
                .any(|&i| (i * lambda.multiplicity(i)) % 2 == 1)
            {
                return None;
            }
            let a = distinct.iter().filter(|&&i| i % 2 == 0).count() as u32;
            let delta = distinct
                .iter()
                .any(|&i| i % 2 == 0 && lambda.multiplicity(i) % 2 == 1);
            Some(SymplecticPartition { lambda, a, delta })
        })
        .collect())
}

/// Fixed points and two-element orbits of an involution on `elements`.
///
/// Orbits are listed by their smaller member, in the order in which that
/// member appears. Panics if `f` is not an involution on the set.
pub fn involution_orbits<T: Ord + Clone>(elements: &[T], f: impl Fn(&T) -> T) -> (Vec<T>, Vec<(T, T)>) {
    let mut fixed = Vec::new();
    let mut pairs = Vec::new();
    for x in elements {
        let y = f(x);
        assert!(f(&y) == *x, "map is not an involution");
        match y.cmp(x) {
            std::cmp::Ordering::Equal => fixed.push(x.clone()),
            std::cmp::Ordering::Greater => pairs.push((x.clone(), y)),
            std::cmp::Ordering::Less => {}
        }
    }
    (fixed, pairs)
}
