use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::FieldError;
use crate::ffpoly::arith;
use crate::ffpoly::context::FieldContext;
use crate::ffpoly::field::{GaloisField, Poly};
use crate::ffpoly::poly::FqPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DivisorClass {
    #[serde(rename = "X_MINUS_1")]
    XMinus1,
    #[serde(rename = "X_PLUS_1")]
    XPlus1,
    F1,
    F2,
}

impl DivisorClass {
    pub fn name(self) -> &'static str {
        match self {
            DivisorClass::XMinus1 => "X_MINUS_1",
            DivisorClass::XPlus1 => "X_PLUS_1",
            DivisorClass::F1 => "F1",
            DivisorClass::F2 => "F2",
        }
    }
}

/// A classified elementary divisor.
///
/// For `F2` the polynomial is the product `ΔΔ*` and `factors` holds the pair
/// with the smaller factor first. Ordered by polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryDivisor {
    class: DivisorClass,
    poly: FqPoly,
    factors: Option<(FqPoly, FqPoly)>,
    delta: u32,
    eps: i8,
    root_order: u64,
}

impl ElementaryDivisor {
    pub fn class(&self) -> DivisorClass {
        self.class
    }

    pub fn poly(&self) -> &FqPoly {
        &self.poly
    }

    pub fn factors(&self) -> Option<&(FqPoly, FqPoly)> {
        self.factors.as_ref()
    }

    /// An irreducible factor: the polynomial itself unless `F2`.
    pub fn irreducible_factor(&self) -> &FqPoly {
        self.factors.as_ref().map_or(&self.poly, |(a, _)| a)
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    /// Reduced degree: `d` for `x ± 1`, `d / 2` otherwise.
    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    /// 2-adic valuation of the reduced degree.
    pub fn alpha(&self) -> u32 {
        arith::v2(self.delta as u64)
    }

    /// Odd part of the reduced degree.
    pub fn odd_red_degree(&self) -> u32 {
        arith::odd_part(self.delta as u64) as u32
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn has_odd_order_roots(&self) -> bool {
        self.root_order % 2 == 1
    }
}

impl Ord for ElementaryDivisor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.poly.cmp(&other.poly)
    }
}

impl PartialOrd for ElementaryDivisor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.factors {
            Some((a, b)) => write!(f, "({a})({b})"),
            None => write!(f, "{}", self.poly),
        }
    }
}

impl Serialize for ElementaryDivisor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ElementaryDivisor", 9)?;
        st.serialize_field("class", &self.class)?;
        st.serialize_field("poly", &self.poly)?;
        st.serialize_field("factors", &self.factors)?;
        st.serialize_field("d", &self.degree())?;
        st.serialize_field("delta", &self.delta)?;
        st.serialize_field("eps", &self.eps)?;
        st.serialize_field("alpha", &self.alpha())?;
        st.serialize_field("odd_red_degree", &self.odd_red_degree())?;
        st.serialize_field("root_order", &self.root_order)?;
        st.end()
    }
}

fn x_poly() -> Poly {
    vec![0, 1]
}

impl FieldContext {
    fn check_poly(&self, f: &FqPoly) -> Result<(), FieldError> {
        if f.q() != self.q() {
            return Err(FieldError::FieldMismatch(f.q() as u64, self.q() as u64));
        }
        if f.constant() == 0 {
            return Err(FieldError::DivisibleByX);
        }
        Ok(())
    }

    /// The monic polynomial whose roots are the inverses of the roots of `f`.
    pub fn star(&self, f: &FqPoly) -> Result<FqPoly, FieldError> {
        self.check_poly(f)?;
        Ok(self.star_unchecked(f))
    }

    fn star_unchecked(&self, f: &FqPoly) -> FqPoly {
        let field = self.field();
        let rev: Vec<u32> = f.coeffs().iter().rev().copied().collect();
        FqPoly::from_raw(self.q(), field.make_monic(&rev))
    }

    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        f.q() == self.q() && self.field().is_irreducible(f.coeffs())
    }

    /// Multiplicative order of `x` modulo the irreducible `f`, given a
    /// multiple `n` of it.
    fn order_of_x(&self, f: &[u32], n: u64) -> u64 {
        let field = self.field();
        let mut order = 1;
        for (prime, k) in self.factor(n) {
            let pk = prime.pow(k);
            let mut y = field.poly_powmod(&x_poly(), (n / pk) as u128, f);
            while y != [1] {
                y = field.poly_powmod(&y, prime as u128, f);
                order *= prime;
            }
        }
        order
    }

    fn make(&self, class: DivisorClass, poly: FqPoly, factors: Option<(FqPoly, FqPoly)>) -> Result<ElementaryDivisor, FieldError> {
        let d = poly.degree();
        let (delta, eps, root_order) = match class {
            DivisorClass::XMinus1 => (1, self.eps(), 1),
            DivisorClass::XPlus1 => (1, self.eps(), 2),
            DivisorClass::F1 => {
                // Roots satisfy z^{q^{d/2}} = z^{-1}.
                let n = self.q_pow(d / 2)? + 1;
                (d / 2, -1, self.order_of_x(poly.coeffs(), n))
            }
            DivisorClass::F2 => {
                let (a, _) = factors.as_ref().expect("F2 divisors carry their factors");
                let n = self.q_pow(a.degree())? - 1;
                (d / 2, 1, self.order_of_x(a.coeffs(), n))
            }
        };
        Ok(ElementaryDivisor {
            class,
            poly,
            factors,
            delta,
            eps,
            root_order,
        })
    }

    /// The `F2` divisor `ΔΔ*` for an irreducible `Δ ≠ Δ*`.
    fn make_pair(&self, delta: FqPoly) -> Result<ElementaryDivisor, FieldError> {
        let partner = self.star_unchecked(&delta);
        let product = FqPoly::from_raw(self.q(), self.field().poly_mul(delta.coeffs(), partner.coeffs()));
        let pair = if delta < partner { (delta, partner) } else { (partner, delta) };
        self.make(DivisorClass::F2, product, Some(pair))
    }

    /// Classifies an irreducible polynomial or a product `ΔΔ*` of a star
    /// pair. An irreducible `Δ ≠ Δ*` is promoted to the `F2` divisor `ΔΔ*`.
    pub fn classify(&self, f: &FqPoly) -> Result<ElementaryDivisor, FieldError> {
        self.check_poly(f)?;
        let field = self.field();
        if *f == FqPoly::x_minus_one(field) {
            return self.make(DivisorClass::XMinus1, f.clone(), None);
        }
        if *f == FqPoly::x_plus_one(field) {
            return self.make(DivisorClass::XPlus1, f.clone(), None);
        }
        if f.degree() > self.caps().max_degree {
            return Err(FieldError::Cap {
                what: "degree",
                value: f.degree() as u64,
                cap: self.caps().max_degree as u64,
            });
        }
        if field.is_irreducible(f.coeffs()) {
            return if self.star_unchecked(f) == *f {
                self.make(DivisorClass::F1, f.clone(), None)
            } else {
                self.make_pair(f.clone())
            };
        }
        let factor = self.split_star_pair(f).ok_or(FieldError::NotElementaryDivisor)?;
        self.make_pair(factor)
    }

    /// Finds `Δ` with `f = ΔΔ*`, `Δ` irreducible and `Δ ≠ Δ*`, by
    /// equal-degree splitting.
    fn split_star_pair(&self, f: &FqPoly) -> Option<FqPoly> {
        let field = self.field();
        let d = f.degree();
        if !d.is_multiple_of(2) {
            return None;
        }
        let k = d / 2;
        let fc = f.coeffs();
        let derivative: Poly = GaloisField::trim(
            fc.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| field.mul(c, field.from_int(i as i64)))
                .collect(),
        );
        if field.poly_gcd(fc, &derivative).len() != 1 {
            return None;
        }
        let qk = self.q_pow(k).ok()?;
        if field.poly_powmod(&x_poly(), qk as u128, fc) != field.poly_rem(&x_poly(), fc) {
            return None;
        }
        // Squarefree with all roots in F_{q^k}: random-ish splitting.
        let half = (qk - 1) / 2;
        let q = self.q();
        let candidates = (1..d.min(4)).flat_map(|deg| (0..(q as u64).pow(deg)).map(move |i| FqPoly::from_index(q, deg, i)));
        for a in candidates.take(400) {
            let b = field.poly_sub(&field.poly_powmod(a.coeffs(), half as u128, fc), &[1]);
            let g = field.poly_gcd(fc, &b);
            if g.len() as u32 - 1 == k {
                let g = FqPoly::from_raw(self.q(), g);
                let (h, rem) = field.poly_divrem(fc, g.coeffs());
                let partner = self.star_unchecked(&g);
                let ok = rem.is_empty() && h == partner.coeffs() && partner != g && field.is_irreducible(g.coeffs());
                return ok.then_some(g);
            }
        }
        None
    }

    fn check_degree(&self, max_degree: u32) -> Result<(), FieldError> {
        if max_degree > self.caps().max_degree {
            return Err(FieldError::Cap {
                what: "max_degree",
                value: max_degree as u64,
                cap: self.caps().max_degree as u64,
            });
        }
        Ok(())
    }

    /// Monic irreducibles of degree exactly `degree`, other than `x`, in
    /// increasing order, by sieving out products of lower-degree factors.
    fn irreducibles_of_degree(&self, degree: u32, lower: &[Vec<FqPoly>]) -> Result<Vec<FqPoly>, FieldError> {
        let q = self.q();
        let total = arith::checked_pow(q as u64, degree)
            .filter(|&t| t <= self.caps().max_sieve)
            .ok_or(FieldError::Cap {
                what: "q^degree",
                value: arith::checked_pow(q as u64, degree).unwrap_or(u64::MAX),
                cap: self.caps().max_sieve,
            })?;
        if degree == 1 {
            return Ok((1..q).map(|c| FqPoly::from_raw(q, vec![c, 1])).collect());
        }
        let field = self.field();
        let mut composite = vec![false; total as usize];
        let x = FqPoly::x(field);
        for j in 1..=degree / 2 {
            let mut factors: Vec<&FqPoly> = lower[j as usize].iter().collect();
            if j == 1 {
                factors.push(&x);
            }
            let cofactors = (q as u64).pow(degree - j);
            for h in factors {
                for u in 0..cofactors {
                    let u = FqPoly::from_index(q, degree - j, u);
                    let prod = FqPoly::from_raw(q, field.poly_mul(h.coeffs(), u.coeffs()));
                    composite[prod.index() as usize] = true;
                }
            }
        }
        Ok((0..total)
            .filter(|&i| !composite[i as usize])
            .map(|i| FqPoly::from_index(q, degree, i))
            .collect())
    }

    /// Irreducibles by degree; entry `d` lists degree `d` (entry 0 empty).
    fn irreducibles_by_degree(&self, max_degree: u32) -> Result<Vec<Vec<FqPoly>>, FieldError> {
        let mut out = vec![Vec::new()];
        for d in 1..=max_degree {
            let next = self.irreducibles_of_degree(d, &out)?;
            out.push(next);
        }
        Ok(out)
    }

    /// All monic irreducibles of degree `1..=max_degree` except `x`.
    pub fn enumerate_irreducibles(&self, max_degree: u32) -> Result<Vec<FqPoly>, FieldError> {
        self.check_degree(max_degree)?;
        Ok(self.irreducibles_by_degree(max_degree)?.into_iter().flatten().collect())
    }

    /// The self-reciprocal `x^k g(x + 1/x)` for `g` of degree `k`.
    fn palindromic_lift(&self, g: &FqPoly) -> FqPoly {
        let field = self.field();
        let k = g.degree() as usize;
        let x2p1: Poly = vec![1, 0, 1];
        let mut acc: Poly = Vec::new();
        let mut power: Poly = vec![1];
        for (i, &c) in g.coeffs().iter().enumerate() {
            if c != 0 {
                let mut term = vec![0; k - i];
                term.extend(field.poly_scale(&power, c));
                acc = field.poly_add(&acc, &term);
            }
            power = field.poly_mul(&power, &x2p1);
        }
        FqPoly::from_raw(self.q(), acc)
    }

    /// For `g` irreducible of degree `k` with root `β`, whether `β^2 - 4` is
    /// a nonsquare in `F_{q^k}`, i.e. whether `z^2 - βz + 1` is irreducible
    /// there, which makes the lift of `g` irreducible.
    fn lift_is_irreducible(&self, g: &FqPoly) -> Result<bool, FieldError> {
        let field = self.field();
        let qk = self.q_pow(g.degree())?;
        let h = field.poly_sub(&[0, 0, 1], &[field.from_int(4)]);
        let h = field.poly_rem(&h, g.coeffs());
        Ok(field.poly_powmod(&h, ((qk - 1) / 2) as u128, g.coeffs()) == [field.neg(1)])
    }

    /// The elementary divisors of degree at most `max_degree`, in
    /// increasing order. With `odd_only`, those whose roots have odd order.
    pub fn divisors(&self, max_degree: u32, odd_only: bool) -> Result<Vec<ElementaryDivisor>, FieldError> {
        self.check_degree(max_degree)?;
        let field = self.field();
        let mut out = vec![self.make(DivisorClass::XMinus1, FqPoly::x_minus_one(field), None)?];
        if !odd_only {
            out.push(self.make(DivisorClass::XPlus1, FqPoly::x_plus_one(field), None)?);
        }
        let irr = self.irreducibles_by_degree(max_degree / 2)?;
        for k in 1..=max_degree / 2 {
            let qk = self.q_pow(k)?;
            let mut bases = irr[k as usize].clone();
            if k == 1 {
                bases.push(FqPoly::x(field));
            }
            for g in &bases {
                if !self.lift_is_irreducible(g)? {
                    continue;
                }
                let f = self.palindromic_lift(g);
                if odd_only && field.poly_powmod(&x_poly(), arith::odd_part(qk + 1) as u128, f.coeffs()) != [1] {
                    continue;
                }
                out.push(self.make(DivisorClass::F1, f, None)?);
            }
            for delta in &irr[k as usize] {
                let partner = self.star_unchecked(delta);
                if partner <= *delta {
                    continue;
                }
                if odd_only && field.poly_powmod(&x_poly(), arith::odd_part(qk - 1) as u128, delta.coeffs()) != [1] {
                    continue;
                }
                out.push(self.make_pair(delta.clone())?);
            }
        }
        out.sort();
        Ok(out)
    }

    /// The divisor whose roots are the `p^k`-th powers of the roots of `d`.
    pub fn frobenius_twist(&self, d: &ElementaryDivisor, k: i64) -> ElementaryDivisor {
        let field = self.field();
        let twist = |f: &FqPoly| FqPoly::from_raw(self.q(), field.poly_frobenius(f.coeffs(), k));
        let factors = d.factors.as_ref().map(|(a, b)| {
            let (a, b) = (twist(a), twist(b));
            if a < b { (a, b) } else { (b, a) }
        });
        ElementaryDivisor {
            poly: twist(&d.poly),
            factors,
            ..d.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64) -> FieldContext {
        FieldContext::new(q).unwrap()
    }

    fn poly(c: &FieldContext, coeffs: &[u32]) -> FqPoly {
        FqPoly::new(c.field(), coeffs.to_vec()).unwrap()
    }

    /// Necklace count of monic irreducibles of degree `n`, minus `x` in
    /// degree one.
    fn necklace(q: u64, n: u64) -> u64 {
        let sum: i64 = arith::divisors(n)
            .into_iter()
            .map(|d| arith::mobius(n / d) * (q as i64).pow(d as u32))
            .sum();
        sum as u64 / n - u64::from(n == 1)
    }

    /// Order of `x` by direct iteration.
    fn brute_order(c: &FieldContext, f: &[u32]) -> u64 {
        let field = c.field();
        let mut cur = field.poly_rem(&[0, 1], f);
        let mut k = 1;
        while cur != [1] {
            cur = field.poly_mulmod(&cur, &[0, 1], f);
            k += 1;
        }
        k
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for q in [3u64, 5, 7] {
            let c = ctx(q);
            let max = 8;
            let all = c.enumerate_irreducibles(max).unwrap();
            for n in 1..=max {
                let count = all.iter().filter(|f| f.degree() == n).count() as u64;
                assert_eq!(count, necklace(q, n as u64), "q = {q}, degree {n}");
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn sieve_agrees_with_rabin() {
        for q in [3u64, 5, 9] {
            let c = ctx(q);
            let found = c.enumerate_irreducibles(4).unwrap();
            let brute: Vec<FqPoly> = (1..=4)
                .flat_map(|d| (0..(q).pow(d)).map(move |i| (d, i)))
                .map(|(d, i)| FqPoly::from_index(q as u32, d, i))
                .filter(|f| f.constant() != 0 && c.is_irreducible(f))
                .collect();
            assert_eq!(found, brute, "q = {q}");
        }
    }

    #[test]
    fn irreducible_examples() {
        let c3 = ctx(3);
        let lin = c3.enumerate_irreducibles(1).unwrap();
        assert_eq!(lin, [FqPoly::x_plus_one(c3.field()), FqPoly::x_minus_one(c3.field())]);
        assert_eq!(c3.enumerate_irreducibles(2).unwrap().len(), 2 + 3);
        assert_eq!(ctx(5).enumerate_irreducibles(1).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_errors() {
        assert!(matches!(FieldContext::new(4), Err(FieldError::NotOddPrimePower(4))));
        assert!(matches!(ctx(3).enumerate_irreducibles(13), Err(FieldError::Cap { .. })));
        assert!(matches!(ctx(97).enumerate_irreducibles(5), Err(FieldError::Cap { .. })));
    }

    #[test]
    fn star_examples() {
        let c = ctx(3);
        let f = c.field();
        assert_eq!(c.star(&FqPoly::x_minus_one(f)).unwrap(), FqPoly::x_minus_one(f));
        assert_eq!(c.star(&FqPoly::x_plus_one(f)).unwrap(), FqPoly::x_plus_one(f));
        assert_eq!(c.star(&FqPoly::x(f)), Err(FieldError::DivisibleByX));
        for d in 1..=6 {
            for i in 0..3u64.pow(d) {
                let g = FqPoly::from_index(3, d, i);
                if g.constant() == 0 {
                    continue;
                }
                let s = c.star(&g).unwrap();
                assert_eq!(s.degree(), g.degree());
                assert_eq!(c.star(&s).unwrap(), g);
            }
        }
    }

    #[test]
    fn star_inverts_roots() {
        // Over F_q, a linear x - r has star x - 1/r.
        let c = ctx(7);
        let f = c.field();
        for r in 1..7 {
            let g = poly(&c, &[f.neg(r), 1]);
            assert_eq!(c.star(&g).unwrap(), poly(&c, &[f.neg(f.inv(r)), 1]));
        }
    }

    #[test]
    fn classify_examples() {
        let c = ctx(3);
        let xm1 = c.classify(&FqPoly::x_minus_one(c.field())).unwrap();
        assert_eq!((xm1.class(), xm1.degree(), xm1.delta(), xm1.root_order()), (DivisorClass::XMinus1, 1, 1, 1));
        assert!(xm1.has_odd_order_roots());
        let xp1 = c.classify(&FqPoly::x_plus_one(c.field())).unwrap();
        assert!(!xp1.has_odd_order_roots());

        let i = c.classify(&poly(&c, &[1, 0, 1])).unwrap();
        assert_eq!((i.class(), i.delta(), i.eps(), i.root_order()), (DivisorClass::F1, 1, -1, 4));
        assert!(!i.has_odd_order_roots());

        let phi5 = c.classify(&poly(&c, &[1, 1, 1, 1, 1])).unwrap();
        assert_eq!((phi5.class(), phi5.delta(), phi5.eps(), phi5.root_order()), (DivisorClass::F1, 2, -1, 5));
        assert_eq!((phi5.alpha(), phi5.odd_red_degree()), (1, 1));
        assert!(phi5.has_odd_order_roots());
    }

    #[test]
    fn classify_pairs_and_rejections() {
        let c = ctx(5);
        let f = c.field();
        // x - 2 and its star x - 3 over F_5.
        let a = poly(&c, &[3, 1]);
        let b = poly(&c, &[2, 1]);
        let from_factor = c.classify(&a).unwrap();
        assert_eq!(from_factor.class(), DivisorClass::F2);
        assert_eq!(from_factor.factors(), Some(&(b.clone(), a.clone())));
        let product = FqPoly::new(f, f.poly_mul(a.coeffs(), b.coeffs())).unwrap();
        assert_eq!(c.classify(&product).unwrap(), from_factor);
        assert_eq!((from_factor.delta(), from_factor.eps(), from_factor.root_order()), (1, 1, 4));

        // (x - 1)(x - 2) is reducible and not a star pair.
        let bad = FqPoly::new(f, f.poly_mul(&[4, 1], &[3, 1])).unwrap();
        assert_eq!(c.classify(&bad), Err(FieldError::NotElementaryDivisor));
        let square = FqPoly::new(f, f.poly_mul(&[1, 0, 1], &[1, 0, 1])).unwrap();
        assert_eq!(c.classify(&square), Err(FieldError::NotElementaryDivisor));
        assert_eq!(c.classify(&FqPoly::x(f)), Err(FieldError::DivisibleByX));
    }

    #[test]
    fn classify_degree_two_pair_products() {
        // Every F2 product of quadratic factors splits back to its pair.
        let c = ctx(3);
        for d in c.divisors(4, false).unwrap() {
            let again = c.classify(d.poly()).unwrap();
            assert_eq!(again, d);
        }
    }

    /// All divisors of degree at most `max` by brute force: irreducible
    /// polynomials classified one by one.
    fn brute_divisors(c: &FieldContext, max: u32) -> Vec<ElementaryDivisor> {
        let mut out: Vec<ElementaryDivisor> = Vec::new();
        for d in 1..=max {
            for i in 0..(c.q() as u64).pow(d) {
                let g = FqPoly::from_index(c.q(), d, i);
                if g.constant() == 0 || !c.is_irreducible(&g) {
                    continue;
                }
                let div = c.classify(&g).unwrap();
                if div.degree() <= max && !out.contains(&div) {
                    out.push(div);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn divisor_table_matches_brute_force() {
        for (q, max) in [(3u64, 8), (5, 6), (7, 4), (9, 4)] {
            let c = ctx(q);
            let fast = c.divisors(max, false).unwrap();
            assert_eq!(fast, brute_divisors(&c, max), "q = {q}");
            let odd = c.divisors(max, true).unwrap();
            let filtered: Vec<_> = fast.into_iter().filter(|d| d.has_odd_order_roots()).collect();
            assert_eq!(odd, filtered, "q = {q}");
        }
    }

    #[test]
    fn divisor_invariants() {
        for q in [3u64, 5, 9, 13] {
            let c = ctx(q);
            let max = if q == 13 { 4 } else { 6 };
            for d in c.divisors(max, false).unwrap() {
                let factor = d.irreducible_factor();
                assert_eq!(d.root_order(), brute_order(&c, factor.coeffs()));
                assert_eq!((c.q_pow(factor.degree()).unwrap() - 1) % d.root_order(), 0);
                match d.class() {
                    DivisorClass::F1 | DivisorClass::F2 => {
                        assert_eq!(d.degree() % 2, 0);
                        assert_eq!(d.delta() * 2, d.degree());
                    }
                    _ => assert_eq!(d.delta(), d.degree()),
                }
                assert_eq!(d.odd_red_degree() << d.alpha(), d.delta());
                let starred = c.classify(&c.star(factor).unwrap()).unwrap();
                assert_eq!((starred.class(), starred.delta(), starred.eps()), (d.class(), d.delta(), d.eps()));
            }
        }
    }

    #[test]
    fn twist_examples() {
        let c = ctx(3);
        let xm1 = c.classify(&FqPoly::x_minus_one(c.field())).unwrap();
        for k in -3..3 {
            assert_eq!(c.frobenius_twist(&xm1, k), xm1);
        }
        let phi5 = c.classify(&poly(&c, &[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(c.frobenius_twist(&phi5, 1), phi5);
    }

    #[test]
    fn twist_is_an_action_preserving_invariants() {
        for q in [3u64, 9, 25] {
            let c = ctx(q);
            let field = c.field();
            let divisors = c.divisors(4, false).unwrap();
            for d in &divisors {
                for k in -2..=2i64 {
                    let t = c.frobenius_twist(d, k);
                    assert_eq!(c.frobenius_twist(&t, -k), *d);
                    assert_eq!(c.frobenius_twist(&t, 1), c.frobenius_twist(d, k + 1));
                    assert_eq!(c.classify(t.poly()).unwrap(), t);
                    assert_eq!((t.class(), t.delta(), t.eps(), t.root_order()), (d.class(), d.delta(), d.eps(), d.root_order()));
                    // Roots of the twist are p^k-th powers of roots of d.
                    let factor = d.irreducible_factor();
                    let pk = (c.p() as u128).pow(k.rem_euclid(c.e() as i64) as u32);
                    let root = field.poly_powmod(&[0, 1], pk, factor.coeffs());
                    let twisted_factor = field.poly_frobenius(factor.coeffs(), k);
                    assert!(field.poly_compose_mod(&twisted_factor, &root, factor.coeffs()).is_empty());
                    // Twisting commutes with star.
                    assert_eq!(
                        c.star(&FqPoly::from_raw(c.q(), twisted_factor)).unwrap(),
                        FqPoly::from_raw(c.q(), field.poly_frobenius(c.star(factor).unwrap().coeffs(), k))
                    );
                }
            }
        }
    }

    #[test]
    fn twist_is_nontrivial_over_f9() {
        let c = ctx(9);
        let moved = c
            .divisors(2, true)
            .unwrap()
            .into_iter()
            .filter(|d| c.frobenius_twist(d, 1) != *d)
            .count();
        assert!(moved > 0);
    }

    #[test]
    fn serialization_shape() {
        let c = ctx(3);
        let d = c.classify(&poly(&c, &[1, 0, 1])).unwrap();
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"class":"F1","poly":[1,0,1],"factors":null,"d":2,"delta":1,"eps":-1,"alpha":0,"odd_red_degree":1,"root_order":4}"#
        );
    }
}
