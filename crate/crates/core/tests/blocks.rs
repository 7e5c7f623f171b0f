use std::collections::BTreeSet;
use std::sync::Arc;

use spalperin::blocks::*;
use spalperin::caps::Caps;
use spalperin::error::{BlockError, FieldError};
use spalperin::ffpoly::{arith, DivisorClass, FieldContext, FqPoly};
use spalperin::partitions::{partitions_of, two_core_tower, Partition, TwoCoreTower};
use spalperin::symplectic::{enum_sct1_prime, enum_scu1, is_dagger_fixed, ScTElement, ScUElement};

fn ctx(q: u64) -> FieldContext {
    FieldContext::new(q).unwrap()
}

fn blocks(n: u32, q: u64) -> Vec<Arc<BlockLabel>> {
    enum_blocks(&ctx(q), n).unwrap().into_iter().map(Arc::new).collect()
}

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// Characteristic polynomial `(x-1)^m ∏ Γ^{m_Γ}` of the class.
fn char_poly(b: &BlockLabel) -> Vec<u32> {
    let f = b.ctx().field();
    let mut acc = vec![1];
    for _ in 0..b.m_x_minus_1() {
        acc = f.poly_mul(&acc, FqPoly::x_minus_one(f).coeffs());
    }
    for (d, m) in b.parts() {
        for _ in 0..*m {
            acc = f.poly_mul(&acc, d.poly().coeffs());
        }
    }
    acc
}

/// Monic self-reciprocal polynomials of degree `2n+1` all of whose roots
/// have odd order, found by scanning every monic polynomial.
fn char_poly_oracle(n: u32, q: u64) -> BTreeSet<Vec<u32>> {
    let c = ctx(q);
    let f = c.field();
    let deg = 2 * n + 1;
    let lcm = (1..=deg).fold(1u64, |acc, k| {
        let v = q.pow(k) - 1;
        let g = gcd(acc, v);
        acc / g * v
    });
    let odd = arith::odd_part(lcm);
    let mut out = BTreeSet::new();
    for i in 0..q.pow(deg) {
        let g = FqPoly::from_index(q as u32, deg, i);
        if g.constant() == 0 || c.star(&g).unwrap() != g {
            continue;
        }
        // Roots of odd order: g divides (x^odd - 1)^deg.
        let r = f.poly_sub(&f.poly_powmod(&[0, 1], odd as u128, g.coeffs()), &[1]);
        if f.poly_powmod(&r, deg as u128, g.coeffs()).is_empty() {
            out.insert(g.coeffs().to_vec());
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn sp4_3_has_two_blocks() {
    let bs = blocks(2, 3);
    assert_eq!(bs.len(), 2);
    assert!(bs[0].is_principal());
    assert_eq!(bs[0].m_x_minus_1(), 5);
    assert_eq!(bs[1].m_x_minus_1(), 1);
    assert_eq!(bs[1].parts().len(), 1);
    let (phi5, m) = &bs[1].parts()[0];
    assert_eq!((phi5.poly().coeffs(), *m), (&[1, 1, 1, 1, 1][..], 1));
    assert_eq!(bs[0].centralizer_shape().to_string(), "Sp_4(3)");
    assert_eq!(bs[1].centralizer_shape().to_string(), "Sp_0(3) × GU_1(3^2)");
    let counts: Vec<(usize, usize)> = bs
        .iter()
        .map(|b| (enum_brauer_labels(b).len(), enum_weight_labels(b).len()))
        .collect();
    assert_eq!(counts, [(7, 7), (1, 1)]);
}

#[test]
fn small_block_examples() {
    assert_eq!(blocks(1, 3).len(), 1);
    for (n, q) in [(1, 5), (2, 7), (3, 9), (1, 13)] {
        let bs = blocks(n, q);
        assert!(bs[0].is_principal(), "(n, q) = ({n}, {q})");
        assert_eq!(bs[0].w_x_minus_1(), n);
        assert_eq!(bs.iter().filter(|b| b.is_principal()).count(), 1);
        assert!(bs.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn blocks_match_characteristic_polynomial_oracle() {
    for (n, q) in [(1, 3), (2, 3), (3, 3), (1, 5), (2, 5), (3, 5), (1, 7), (2, 7), (1, 9), (2, 9), (1, 11), (1, 13)] {
        let found: BTreeSet<Vec<u32>> = blocks(n, q).iter().map(|b| char_poly(b)).collect();
        assert_eq!(found.len(), blocks(n, q).len());
        assert_eq!(found, char_poly_oracle(n, q), "(n, q) = ({n}, {q})");
    }
}

#[test]
fn block_invariants() {
    for (n, q) in [(2, 3), (3, 3), (2, 5), (2, 9), (3, 7)] {
        for b in blocks(n, q) {
            let total: u32 = b.m_x_minus_1() + b.parts().iter().map(|(d, m)| d.degree() * m).sum::<u32>();
            assert_eq!(total, 2 * n + 1);
            assert_eq!(b.m_x_minus_1() % 2, 1);
            for (d, m) in b.parts() {
                assert!(d.has_odd_order_roots());
                assert_ne!(d.class(), DivisorClass::XPlus1);
                assert!(*m >= 1);
            }
            let shape = b.centralizer_shape();
            assert_eq!(shape.factors[0].kind, FactorKind::Sp);
            assert_eq!(shape.factors[0].rank, 2 * b.w_x_minus_1());
            for (factor, (d, m)) in shape.factors[1..].iter().zip(b.parts()) {
                assert_eq!(factor.rank, *m);
                assert_eq!(factor.exponent, d.delta());
                assert_eq!(factor.kind == FactorKind::GU, d.eps() < 0);
            }
        }
    }
}

#[test]
fn block_validation() {
    let c = ctx(3);
    assert!(matches!(enum_blocks(&c, 0), Err(BlockError::RankTooSmall(0))));
    assert!(matches!(enum_blocks(&c, 7), Err(BlockError::Field(FieldError::Cap { what: "n", .. }))));
    assert!(matches!(enum_blocks(&ctx(17), 1), Err(BlockError::Field(FieldError::Cap { what: "q", .. }))));
    assert!(matches!(FieldContext::new(6), Err(FieldError::NotOddPrimePower(6))));
    assert!(enum_blocks(&FieldContext::with_caps(17, Caps::unlimited()).unwrap(), 1).is_ok());

    let xp1 = divisor_from_coeffs(&c, vec![1, 1]).unwrap();
    let x2p1 = divisor_from_coeffs(&c, vec![1, 0, 1]).unwrap();
    let phi5 = divisor_from_coeffs(&c, vec![1, 1, 1, 1, 1]).unwrap();
    assert!(BlockLabel::new(&c, 2, 4, vec![]).is_err());
    assert!(BlockLabel::new(&c, 2, 3, vec![(xp1, 2)]).is_err());
    assert!(BlockLabel::new(&c, 2, 3, vec![(x2p1, 1)]).is_err());
    assert!(BlockLabel::new(&c, 2, 1, vec![(phi5.clone(), 1)]).is_ok());
    assert!(BlockLabel::new(&c, 3, 1, vec![(phi5, 1)]).is_err());
}

#[test]
fn blockwise_counts_agree() {
    for (n, q) in [(2, 3), (3, 3), (2, 5), (2, 9), (3, 5), (2, 13)] {
        for b in blocks(n, q) {
            let brauer = enum_brauer_labels(&b);
            let weight = enum_weight_labels(&b);
            assert_eq!(brauer.len(), weight.len(), "block {b} of Sp({}, {q})", 2 * n);
            assert_eq!(brauer.len() as u64, label_count::<ScUElement>(&b));
            assert_eq!(weight.len() as u64, label_count::<ScTElement>(&b));
            assert!(brauer.windows(2).all(|w| w[0] < w[1]));
            assert!(weight.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn principal_block_label_examples() {
    let bs = blocks(2, 3);
    assert_eq!(enum_brauer_labels(&bs[0]).len(), 7);
    assert_eq!(enum_weight_labels(&bs[1]).len(), 1);
    let only = &enum_brauer_labels(&bs[1])[0];
    assert_eq!(only.symplectic().n(), 0);
    assert_eq!(only.gl(), [p(&[1])]);
    let c = ctx(3);
    let phi5 = divisor_from_coeffs(&c, vec![1, 1, 1, 1, 1]).unwrap();
    assert!(BrauerLabel::new(bs[1].clone(), ScUElement::new(0, &[], 1).unwrap(), vec![p(&[2])]).is_err());
    assert!(BrauerLabel::new(bs[1].clone(), ScUElement::new(1, &[(2, 1)], 1).unwrap(), vec![p(&[1])]).is_err());
    assert_eq!(bs[1].parts()[0].0, phi5);
}

#[test]
fn delta_action_on_labels() {
    for (n, q) in [(2, 3), (3, 3), (2, 5), (4, 3)] {
        for b in blocks(n, q) {
            let gl_count: usize = b.gl_weights().into_iter().map(|m| partitions_of(m).len()).product();
            let w = b.w_x_minus_1();
            let brauer = enum_brauer_labels(&b);
            let weight = enum_weight_labels(&b);
            for x in &brauer {
                assert_eq!(x.act_delta().act_delta(), *x);
                assert_eq!(x.act_delta().block(), x.block());
            }
            for x in &weight {
                assert_eq!(x.act_delta().act_delta(), *x);
                assert_eq!(x.act_delta() == *x, is_dagger_fixed(x.symplectic()));
            }
            let bf = brauer.iter().filter(|x| x.act_delta() == **x).count();
            let wf = weight.iter().filter(|x| x.act_delta() == **x).count();
            assert_eq!(bf, enum_scu1(w).len() * gl_count);
            assert_eq!(wf, enum_sct1_prime(w).len() * gl_count);
            assert_eq!(bf, wf);
            for x in &brauer {
                if x.symplectic().is_even() {
                    assert_eq!(x.act_delta(), *x);
                }
            }
        }
    }
    let principal = &blocks(2, 3)[0];
    let fixed = enum_weight_labels(principal).iter().filter(|x| x.act_delta() == **x).count();
    assert_eq!(fixed, 3);
}

#[test]
fn field_action_on_labels() {
    for (n, q) in [(2, 3), (2, 5), (2, 9), (1, 25), (1, 27)] {
        let c = FieldContext::with_caps(q, Caps::unlimited()).unwrap();
        let bs: Vec<Arc<BlockLabel>> = enum_blocks(&c, n).unwrap().into_iter().map(Arc::new).collect();
        let set: BTreeSet<&BlockLabel> = bs.iter().map(|b| b.as_ref()).collect();
        for b in &bs {
            for k in -2..=2i64 {
                let t = b.twist(k);
                assert!(set.contains(&t), "twisted block must be a block");
                assert_eq!(t.twist(-k), **b);
                assert_eq!(t.centralizer_shape(), b.centralizer_shape());
            }
            assert_eq!(b.twist(c.e() as i64), **b);
            for x in enum_brauer_labels(b) {
                for k in 0..c.e() as i64 {
                    let y = x.act_field(k);
                    assert_eq!(y.act_field(-k), x);
                    assert_eq!(y.act_field(1), x.act_field(k + 1));
                    assert_eq!(y.symplectic(), x.symplectic());
                    assert_eq!(y.act_delta(), x.act_delta().act_field(k));
                }
                if b.is_principal() {
                    assert_eq!(x.act_field(1), x);
                }
            }
        }
        if q == 3 {
            assert_eq!(bs[1].twist(1), *bs[1]);
        }
        if q == 9 {
            assert!(bs.iter().any(|b| b.twist(1) != **b), "F_9 has twist-moved blocks");
        }
    }
}

#[test]
fn delta_equals_field_forces_fixed() {
    for (n, q) in [(2, 3), (3, 3), (2, 5), (2, 9)] {
        let c = ctx(q);
        for b in blocks(n, q) {
            for x in enum_brauer_labels(&b) {
                for k in 0..c.e() as i64 {
                    if x.act_delta() == x.act_field(k) {
                        assert_eq!(x.act_delta(), x);
                    }
                }
            }
            for x in enum_weight_labels(&b) {
                for k in 0..c.e() as i64 {
                    if x.act_delta() == x.act_field(k) {
                        assert_eq!(x.act_delta(), x);
                    }
                }
            }
        }
    }
}

#[test]
fn jordan_commutes_with_actions() {
    for (n, q) in [(2, 3), (3, 3), (2, 5), (2, 9)] {
        let c = ctx(q);
        for b in blocks(n, q) {
            if b.is_principal() {
                for x in enum_brauer_labels(&b) {
                    assert!(x.gl().is_empty());
                }
            }
            for x in enum_brauer_labels(&b) {
                let u = x.to_unipotent();
                assert_eq!(jordan_brauer(&b, u.clone()).unwrap(), x);
                let delta_u = UnipotentLabel {
                    symplectic: spalperin::symplectic::delta_on_scu(&u.symplectic),
                    gl: u.gl.clone(),
                };
                assert_eq!(jordan_brauer(&b, delta_u).unwrap(), x.act_delta());
                for k in 0..c.e() as i64 {
                    let (tb, perm) = b.twist_with_permutation(k);
                    let twisted_u = UnipotentLabel {
                        symplectic: u.symplectic.clone(),
                        gl: perm.iter().map(|&i| u.gl[i].clone()).collect(),
                    };
                    assert_eq!(jordan_brauer(&Arc::new(tb), twisted_u).unwrap(), x.act_field(k));
                }
            }
            for x in enum_weight_labels(&b) {
                let u = x.to_unipotent();
                let delta_u = UnipotentLabel {
                    symplectic: spalperin::symplectic::dagger(&u.symplectic),
                    gl: u.gl.clone(),
                };
                assert_eq!(jordan_weights(&b, delta_u).unwrap(), x.act_delta());
            }
            let bad = UnipotentLabel {
                symplectic: ScUElement::new(b.w_x_minus_1() + 1, &[(1, 2 * b.w_x_minus_1() + 2)], 1).unwrap(),
                gl: vec![],
            };
            assert!(jordan_brauer(&b, bad).is_err());
        }
    }
}

fn principal_block(w: u32) -> Arc<BlockLabel> {
    Arc::new(BlockLabel::principal(&ctx(3), w).unwrap())
}

#[test]
fn assignment_examples() {
    let b0 = principal_block(1);
    let empty_block = Arc::new(BlockLabel::new(&ctx(3), 2, 1, vec![(divisor_from_coeffs(&ctx(3), vec![1, 1, 1, 1, 1]).unwrap(), 1)]).unwrap());
    let empty = WeightLabel::new(empty_block.clone(), ScTElement::new(p(&[]), p(&[]), p(&[])).unwrap(), vec![p(&[1])]).unwrap();
    let a = expand_weight(&empty);
    assert_eq!((&a.family1, &a.family2, &a.kappa_extra), (&TwoCoreTower::empty(), &TwoCoreTower::empty(), &p(&[])));
    assert_eq!(delta_on_assignment(&a), a);

    let x = WeightLabel::new(b0.clone(), ScTElement::new(p(&[]), p(&[1]), p(&[])).unwrap(), vec![]).unwrap();
    let a = expand_weight(&x);
    assert_eq!(a.family2.levels(), [vec![p(&[1])]]);
    assert_eq!(a.kappa_extra, p(&[]));
    let d = delta_on_assignment(&a);
    assert_eq!(d.family2, TwoCoreTower::empty());
    assert_eq!(d.kappa_extra, p(&[1]));
}

#[test]
fn assignment_roundtrip_and_commuting_square() {
    for w in 0..=6 {
        let b = principal_block(w.max(1));
        let b = if w == 0 {
            Arc::new(BlockLabel::new(&ctx(3), 2, 1, vec![(divisor_from_coeffs(&ctx(3), vec![1, 1, 1, 1, 1]).unwrap(), 1)]).unwrap())
        } else {
            b
        };
        for x in enum_weight_labels(&b) {
            let a = expand_weight(&x);
            assert_eq!(a.symplectic_weight(), w);
            assert_eq!(contract_assignment(&a).unwrap(), x);
            let d = delta_on_assignment(&a);
            assert_eq!(d, expand_weight(&x.act_delta()), "w = {w}, label {:?}", x.symplectic());
            assert_eq!(delta_on_assignment(&d), a);
            assert_eq!(d.family1, a.family1);
        }
    }
}

#[test]
fn assignment_with_gl_towers() {
    for b in blocks(3, 5).into_iter().filter(|b| !b.is_principal()) {
        for x in enum_weight_labels(&b) {
            let a = expand_weight(&x);
            for (t, g) in a.gl.iter().zip(x.gl()) {
                assert_eq!(*t, two_core_tower(g));
            }
            assert_eq!(contract_assignment(&a).unwrap(), x);
            assert_eq!(delta_on_assignment(&a).gl, a.gl);
        }
    }
}

#[test]
fn contract_rejects_bad_assignments() {
    let b = principal_block(2);
    let x = &enum_weight_labels(&b)[3];
    let mut a = expand_weight(x);
    a.kappa_extra = p(&[2, 1]);
    assert!(matches!(contract_assignment(&a), Err(BlockError::AssignmentWeight { expected: 2, .. })));
    a.kappa_extra = p(&[2]);
    assert!(contract_assignment(&a).is_err());
}

/// Counts fixed slots and swapped slot pairs of `delta_on_assignment` at
/// level `d`, by filling every slot with a distinct 2-core and watching
/// where each one goes.
fn slot_orbits(d: usize) -> (u64, u64) {
    let marker = |i: u32| Partition::staircase(i + 1);
    let mut next = 0;
    let mut fill = |width: usize| -> Vec<Partition> {
        (0..width)
            .map(|_| {
                next += 1;
                marker(next)
            })
            .collect()
    };
    let pad = |d: usize, top: Vec<Partition>| -> TwoCoreTower {
        let mut levels: Vec<Vec<Partition>> = (0..d).map(|j| vec![Partition::empty(); 1 << j]).collect();
        levels.push(top);
        TwoCoreTower::new(levels).unwrap()
    };
    let family1 = pad(d, fill(1 << d));
    let family2 = pad(d, fill(1 << d));
    let kappa_extra = if d == 0 { fill(1).pop().unwrap() } else { Partition::empty() };
    let block = principal_block(1);
    let a = WeightAssignment {
        block,
        family1,
        family2,
        kappa_extra,
        gl: vec![],
    };
    let image = delta_on_assignment(&a);
    let slots = |a: &WeightAssignment| -> Vec<Partition> {
        let mut v = a.family1.level(d);
        v.extend(a.family2.level(d));
        if d == 0 {
            v.push(a.kappa_extra.clone());
        }
        v
    };
    let (before, after) = (slots(&a), slots(&image));
    let fixed = before.iter().zip(&after).filter(|(x, y)| x == y).count() as u64;
    (fixed, (before.len() as u64 - fixed) / 2)
}

#[test]
fn weight_character_counts() {
    assert_eq!(weight_character_count(DivisorClass::F1, 3), (8, 0));
    assert_eq!(weight_character_count(DivisorClass::XMinus1, 2), (4, 2));
    assert_eq!(weight_character_count(DivisorClass::XMinus1, 0), (1, 1));
    for d in 0..=10u32 {
        for class in [DivisorClass::F1, DivisorClass::F2] {
            assert_eq!(weight_character_total(class, d), 1 << d);
        }
        let expected = if d == 0 { 3 } else { 1 << (d + 1) };
        assert_eq!(weight_character_total(DivisorClass::XMinus1, d), expected);
        if d <= 6 {
            assert_eq!(slot_orbits(d as usize), weight_character_count(DivisorClass::XMinus1, d));
        }
    }
}
