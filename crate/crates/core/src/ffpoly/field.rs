//! Table-driven arithmetic in `F_q` for odd prime powers `q = p^e`, plus
//! dense polynomial arithmetic over it.
//!
//! An element of `F_q` is stored as an integer in `[0, q)`: the base-`p`
//! digits are the coefficients of a polynomial in `y` modulo a fixed
//! primitive polynomial of degree `e` over `F_p` (the first one in base-`p`
//! order). For prime `q` this is the usual residue.

use crate::error::FieldError;
use crate::ffpoly::arith::is_prime;

/// Dense polynomial, little-endian, no trailing zeros (the zero polynomial
/// is empty).
pub type Poly = Vec<u32>;

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients of the defining polynomial in `y` (little-endian,
    /// monic, degree `e`); `[0, 1]` when `e = 1`.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for GaloisField {}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

impl GaloisField {
    /// Builds the tables for `F_q`. `max_q` bounds the `q^2`-sized tables.
    pub fn new(q: u64, max_q: u64) -> Result<Self, FieldError> {
        let (p, e) = prime_power(q).ok_or(FieldError::NotOddPrimePower(q))?;
        if p == 2 {
            return Err(FieldError::NotOddPrimePower(q));
        }
        if q > max_q {
            return Err(FieldError::Cap {
                what: "q",
                value: q,
                cap: max_q,
            });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if e == 1 { vec![0, 1] } else { find_primitive(p, e) };
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut x = x;
            for _ in 0..e {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let pack = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = pack(&sum);
                mul[a as usize * qs + b as usize] = pack(&mul_mod_prime_poly(&da, &db, &modulus, p));
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            for b in 0..q {
                if add[a as usize * qs + b as usize] == 0 {
                    neg[a as usize] = b;
                }
                if mul[a as usize * qs + b as usize] == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        let mut frob = vec![0; qs];
        for a in 0..q {
            let mut r = 1;
            for _ in 0..p {
                r = mul[r as usize * qs + a as usize];
            }
            frob[a as usize] = r;
        }
        Ok(Self {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial of `F_q` over `F_p` in the variable `y`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// The integer `n` reduced into the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `a^{p^k}`, with `k` taken modulo `e`.
    pub fn frobenius(&self, a: u32, k: i64) -> u32 {
        let k = k.rem_euclid(self.e as i64);
        (0..k).fold(a, |x, _| self.frob[x as usize])
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: u32) -> bool {
        a != 0 && self.pow(a, (self.q as u64 - 1) / 2) == 1
    }

    // Polynomial arithmetic. Inputs need not be trimmed; outputs are.

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn poly_add(&self, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    pub fn poly_sub(&self, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(out)
    }

    pub fn poly_scale(&self, a: &[u32], c: u32) -> Poly {
        Self::trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &[u32], b: &[u32]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(out)
    }

    /// Quotient and remainder; `m` must be nonzero.
    pub fn poly_divrem(&self, a: &[u32], m: &[u32]) -> (Poly, Poly) {
        let m = Self::trim(m.to_vec());
        assert!(!m.is_empty(), "division by the zero polynomial");
        let mut r = Self::trim(a.to_vec());
        let dm = m.len() - 1;
        if r.len() < m.len() {
            return (Vec::new(), r);
        }
        let lead_inv = self.inv(*m.last().unwrap());
        let mut quot = vec![0; r.len() - dm];
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = self.mul(*r.last().unwrap(), lead_inv);
            quot[shift] = c;
            for (i, &y) in m.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, y));
            }
            r = Self::trim(r);
        }
        (Self::trim(quot), r)
    }

    pub fn poly_rem(&self, a: &[u32], m: &[u32]) -> Poly {
        self.poly_divrem(a, m).1
    }

    pub fn poly_mulmod(&self, a: &[u32], b: &[u32], m: &[u32]) -> Poly {
        if self.e == 1 && m.last() == Some(&1) {
            return self.prime_mulmod_monic(a, b, m);
        }
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// Prime field, monic modulus: accumulate in `u64` and reduce once per
    /// coefficient instead of going through the tables.
    fn prime_mulmod_monic(&self, a: &[u32], b: &[u32], m: &[u32]) -> Poly {
        let p = self.p as u64;
        let k = m.len() - 1;
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        for i in (k..prod.len()).rev() {
            let c = prod[i] % p;
            prod[i] = 0;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (j, &y) in m[..k].iter().enumerate() {
                prod[i - k + j] += neg * y as u64;
            }
        }
        prod.truncate(k.min(prod.len()));
        Self::trim(prod.into_iter().map(|c| (c % p) as u32).collect())
    }

    pub fn poly_powmod(&self, a: &[u32], mut exp: u128, m: &[u32]) -> Poly {
        let mut base = self.poly_rem(a, m);
        let mut acc = self.poly_rem(&[1], m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_mulmod(&acc, &base, m);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.poly_mulmod(&base, &base, m);
            }
        }
        acc
    }

    pub fn make_monic(&self, a: &[u32]) -> Poly {
        let a = Self::trim(a.to_vec());
        match a.last() {
            None => a,
            Some(&lead) => self.poly_scale(&a, self.inv(lead)),
        }
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[u32], b: &[u32]) -> Poly {
        let mut a = Self::trim(a.to_vec());
        let mut b = Self::trim(b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    /// Evaluates `f` at the residue `r` modulo `m` (Horner).
    pub fn poly_compose_mod(&self, f: &[u32], r: &[u32], m: &[u32]) -> Poly {
        let mut acc = Vec::new();
        for &c in f.iter().rev() {
            acc = self.poly_add(&self.poly_mulmod(&acc, r, m), &[c]);
        }
        self.poly_rem(&acc, m)
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff
    /// `x^{q^n} = x mod f` and `gcd(x^{q^{n/r}} - x, f) = 1` for every prime
    /// `r | n`.
    pub fn is_irreducible(&self, f: &[u32]) -> bool {
        let f = Self::trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        let x: Poly = vec![0, 1];
        // frob_powers[i] = x^{q^i} mod f
        let mut frob_powers = vec![self.poly_rem(&x, &f)];
        for i in 1..=n {
            let next = self.poly_powmod(&frob_powers[i - 1], self.q as u128, &f);
            frob_powers.push(next);
        }
        if frob_powers[n] != self.poly_rem(&x, &f) {
            return false;
        }
        (2..=n)
            .filter(|r| n.is_multiple_of(*r) && is_prime(*r as u64))
            .all(|r| {
                let diff = self.poly_sub(&frob_powers[n / r], &x);
                self.poly_gcd(&diff, &f).len() == 1
            })
    }

    /// Applies `a -> a^{p^k}` to every coefficient.
    pub fn poly_frobenius(&self, a: &[u32], k: i64) -> Poly {
        Self::trim(a.iter().map(|&c| self.frobenius(c, k)).collect())
    }
}

/// Product of two polynomials over `F_p` reduced modulo a monic `modulus`;
/// the result has exactly `deg modulus` coefficients.
fn mul_mod_prime_poly(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (k, &m) in modulus[..e].iter().enumerate() {
            let idx = i - e + k;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

/// First monic polynomial of degree `e` over `F_p`, in base-`p` order of its
/// lower coefficients, for which `y` has multiplicative order `p^e - 1`.
fn find_primitive(p: u32, e: u32) -> Vec<u32> {
    let q = (p as u64).pow(e);
    for idx in 0..(p as u64).pow(e) {
        let mut modulus: Vec<u32> = (0..e)
            .map(|i| ((idx / (p as u64).pow(i)) % p as u64) as u32)
            .collect();
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        let mut y = vec![0u32; e as usize];
        y[1 % e as usize] = 1;
        let one = {
            let mut v = vec![0u32; e as usize];
            v[0] = 1;
            v
        };
        let mut cur = y.clone();
        let mut order = 1u64;
        while cur != one && order < q {
            cur = mul_mod_prime_poly(&cur, &y, &modulus, p);
            order += 1;
        }
        if cur == one && order == q - 1 {
            return modulus;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
