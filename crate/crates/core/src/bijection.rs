//! An explicit block-preserving bijection between Brauer labels and weight
//! labels commuting with the diagonal and field automorphisms.
//!
//! On the symplectic part the δ-fixed labels of `scU(w)` are matched with
//! the δ-fixed labels of `scT(w)` in increasing order, and the two-element
//! orbits are matched by their smaller members (smaller to smaller, larger
//! to larger). GL parts are carried over unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::blocks::{enum_brauer_labels, enum_weight_labels, BlockLabel, BlockwiseLabel, BrauerLabel, SymplecticPart, WeightLabel};
use crate::error::BijectionError;
use crate::symplectic::{involution_orbits, ScTElement, ScUElement};

/// The matching `scU(w) -> scT(w)`.
#[derive(Clone, Debug)]
pub struct SymplecticMatching {
    w: u32,
    map: BTreeMap<ScUElement, ScTElement>,
    fixed: usize,
}

impl SymplecticMatching {
    pub fn new(w: u32) -> Result<Self, BijectionError> {
        let scu = ScUElement::enumerate(w);
        let sct = ScTElement::enumerate(w);
        let (fixed_u, pairs_u) = involution_orbits(&scu, SymplecticPart::delta);
        let (fixed_t, pairs_t) = involution_orbits(&sct, SymplecticPart::delta);
        if fixed_u.len() != fixed_t.len() {
            return Err(BijectionError::FixedCountMismatch {
                w,
                brauer_fixed: fixed_u.len(),
                weight_fixed: fixed_t.len(),
            });
        }
        if pairs_u.len() != pairs_t.len() {
            return Err(BijectionError::CountMismatch {
                w,
                brauer: scu.len(),
                weight: sct.len(),
            });
        }
        let mut map = BTreeMap::new();
        let fixed = fixed_u.len();
        map.extend(fixed_u.into_iter().zip(fixed_t));
        for ((u0, u1), (t0, t1)) in pairs_u.into_iter().zip(pairs_t) {
            map.insert(u0, t0);
            map.insert(u1, t1);
        }
        Ok(Self { w, map, fixed })
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn fixed_count(&self) -> usize {
        self.fixed
    }

    pub fn image(&self, x: &ScUElement) -> &ScTElement {
        &self.map[x]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&ScUElement, &ScTElement)> {
        self.map.iter()
    }
}

/// Ω on one block, with its orbits under the group generated by δ and the
/// field twists stabilising the block.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitPairing {
    block: Arc<BlockLabel>,
    /// Ω as a list of pairs, in Brauer-label order.
    pairs: Vec<MatchedPair>,
    orbits: Vec<MatchedOrbit>,
    /// Smallest `k >= 1` with the `k`-th twist fixing the block.
    twist_stabilizer: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    pub brauer: BrauerLabel,
    pub weight: WeightLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedOrbit {
    pub brauer: Vec<BrauerLabel>,
    pub weight: Vec<WeightLabel>,
}

fn apply(matching: &SymplecticMatching, x: &BrauerLabel) -> WeightLabel {
    WeightLabel::new(x.block().clone(), matching.image(x.symplectic()).clone(), x.gl().to_vec())
        .expect("the matching preserves ranks")
}

/// Orbits of the group generated by δ and the `stab`-th field twist, each
/// sorted, listed by smallest member.
pub fn group_orbits<S: SymplecticPart>(labels: &[BlockwiseLabel<S>], stab: u32) -> Vec<Vec<BlockwiseLabel<S>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in labels {
        if seen.contains(x) {
            continue;
        }
        let mut orbit = BTreeSet::from([x.clone()]);
        let mut frontier = vec![x.clone()];
        while let Some(y) = frontier.pop() {
            for z in [y.act_delta(), y.act_field(stab as i64)] {
                if orbit.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        seen.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    out
}

pub fn build_bijection(block: &Arc<BlockLabel>) -> Result<OrbitPairing, BijectionError> {
    let matching = SymplecticMatching::new(block.w_x_minus_1())?;
    build_with(block, &matching)
}

fn build_with(block: &Arc<BlockLabel>, matching: &SymplecticMatching) -> Result<OrbitPairing, BijectionError> {
    let brauer = enum_brauer_labels(block);
    let weight = enum_weight_labels(block);
    if brauer.len() != weight.len() {
        return Err(BijectionError::CountMismatch {
            w: block.w_x_minus_1(),
            brauer: brauer.len(),
            weight: weight.len(),
        });
    }
    let pairs: Vec<MatchedPair> = brauer
        .iter()
        .map(|x| MatchedPair {
            brauer: x.clone(),
            weight: apply(matching, x),
        })
        .collect();
    let stab = block.twist_stabilizer_order();
    let image: BTreeMap<&BrauerLabel, &WeightLabel> = pairs.iter().map(|p| (&p.brauer, &p.weight)).collect();
    let weight_orbits = group_orbits(&weight, stab);
    let owner: BTreeMap<&WeightLabel, usize> = weight_orbits
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.iter().map(move |y| (y, i)))
        .collect();
    let orbits = group_orbits(&brauer, stab)
        .into_iter()
        .map(|o| {
            let target = owner[image[&o[0]]];
            MatchedOrbit {
                brauer: o,
                weight: weight_orbits[target].clone(),
            }
        })
        .collect();
    Ok(OrbitPairing {
        block: block.clone(),
        pairs,
        orbits,
        twist_stabilizer: stab,
    })
}

impl OrbitPairing {
    pub fn block(&self) -> &Arc<BlockLabel> {
        &self.block
    }

    pub fn pairs(&self) -> &[MatchedPair] {
        &self.pairs
    }

    pub fn orbits(&self) -> &[MatchedOrbit] {
        &self.orbits
    }

    pub fn twist_stabilizer(&self) -> u32 {
        self.twist_stabilizer
    }

    pub fn image(&self, x: &BrauerLabel) -> Option<&WeightLabel> {
        self.pairs
            .binary_search_by(|p| p.brauer.cmp(x))
            .ok()
            .map(|i| &self.pairs[i].weight)
    }

    /// The same pairing with the images of pairs `i` and `j` exchanged.
    /// Used to check that the verifier notices broken pairings.
    pub fn with_swapped_images(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        let wi = out.pairs[i].weight.clone();
        out.pairs[i].weight = std::mem::replace(&mut out.pairs[j].weight, wi);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// The first failing instance, if any.
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub block: String,
    pub labels: usize,
    pub delta_fixed_brauer: usize,
    pub delta_fixed_weight: usize,
    pub checks: Vec<CheckResult>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }
}

/// `x^δ = x^σ` for a field twist `σ` forces `x^δ = x^σ = x`.
fn implication<S: SymplecticPart>(labels: &[BlockwiseLabel<S>], e: u32, check: &mut CheckResult) {
    for x in labels {
        let d = x.act_delta();
        for k in 0..e as i64 {
            let f = x.act_field(k);
            check.record(d != f || d == *x, || format!("{:?} under twist {k}", x.symplectic()));
        }
    }
}

/// Checks, exhaustively on the block: Ω is a bijection onto the weight
/// labels of the same block; Ω commutes with δ; Ω commutes with every field
/// twist (comparing with Ω rebuilt on the twisted block); matched orbits
/// have equal sizes; and the δ-versus-field implication holds on both sides.
pub fn verify_equivariance(pairing: &OrbitPairing) -> EquivarianceReport {
    let block = pairing.block();
    let e = block.ctx().e();
    let brauer = enum_brauer_labels(block);
    let weight = enum_weight_labels(block);

    let mut bijective = CheckResult::new("bijective");
    let domain: Vec<&BrauerLabel> = pairing.pairs.iter().map(|p| &p.brauer).collect();
    bijective.record(domain == brauer.iter().collect::<Vec<_>>(), || "domain is not the set of Brauer labels".into());
    let mut images: Vec<&WeightLabel> = pairing.pairs.iter().map(|p| &p.weight).collect();
    images.sort();
    bijective.record(images == weight.iter().collect::<Vec<_>>(), || "images are not the set of weight labels".into());

    let mut preserving = CheckResult::new("block_preserving");
    for p in &pairing.pairs {
        preserving.record(p.weight.block() == p.brauer.block(), || format!("{:?}", p.brauer.symplectic()));
    }

    let mut delta = CheckResult::new("delta_equivariant");
    for p in &pairing.pairs {
        let lhs = pairing.image(&p.brauer.act_delta());
        let rhs = p.weight.act_delta();
        delta.record(lhs == Some(&rhs), || {
            format!("Ω(δ{:?}) = {:?} but δΩ = {:?}", p.brauer.symplectic(), lhs.map(|w| w.symplectic()), rhs.symplectic())
        });
    }

    let mut field = CheckResult::new("field_equivariant");
    for k in 1..e as i64 {
        let twisted_block = Arc::new(block.twist(k));
        let other = if *twisted_block == **block {
            Ok(pairing.clone())
        } else {
            build_bijection(&twisted_block)
        };
        match other {
            Ok(other) => {
                for p in &pairing.pairs {
                    let lhs = other.image(&p.brauer.act_field(k));
                    let rhs = p.weight.act_field(k);
                    field.record(lhs == Some(&rhs), || format!("twist {k} of {:?}", p.brauer.symplectic()));
                }
            }
            Err(err) => field.record(false, || format!("twisted block: {err}")),
        }
    }

    let mut orbit_sizes = CheckResult::new("orbit_sizes");
    for o in &pairing.orbits {
        let ok = o.brauer.len() == o.weight.len()
            && o.brauer.iter().all(|x| pairing.image(x).is_some_and(|y| o.weight.contains(y)));
        orbit_sizes.record(ok, || format!("orbit of {:?}", o.brauer[0].symplectic()));
    }

    let mut implied = CheckResult::new("delta_field_implication");
    implication(&brauer, e, &mut implied);
    implication(&weight, e, &mut implied);

    EquivarianceReport {
        block: block.to_string(),
        labels: brauer.len(),
        delta_fixed_brauer: brauer.iter().filter(|x| x.act_delta() == **x).count(),
        delta_fixed_weight: weight.iter().filter(|x| x.act_delta() == **x).count(),
        checks: vec![bijective, preserving, delta, field, orbit_sizes, implied],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{enum_sct1_prime, enum_scu1};

    #[test]
    fn matching_fixed_counts() {
        for w in 0..=6 {
            let m = SymplecticMatching::new(w).unwrap();
            assert_eq!(m.fixed_count(), enum_scu1(w).len());
            assert_eq!(m.fixed_count(), enum_sct1_prime(w).len());
            let images: BTreeSet<&ScTElement> = m.pairs().map(|(_, t)| t).collect();
            assert_eq!(images.len(), ScTElement::enumerate(w).len());
        }
    }
}
