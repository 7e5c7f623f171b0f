//! Exact truncated power series in one variable `t` with big-integer
//! coefficients, and the product/theta identities behind the label counts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::SeriesError;

/// `c_0 + c_1 t + ... + c_N t^N`, known exactly up to `t^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Coefficients beyond `truncation` are dropped; missing ones are zero.
    pub fn new(mut coeffs: Vec<BigInt>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], truncation: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), truncation)
    }

    pub fn zero(truncation: usize) -> Self {
        Self::new(Vec::new(), truncation)
    }

    pub fn one(truncation: usize) -> Self {
        Self::new(vec![BigInt::one()], truncation)
    }

    /// `1 + t + t^2 + ...`
    pub fn geometric(truncation: usize) -> Self {
        Self::new(vec![BigInt::one(); truncation + 1], truncation)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let n = truncation.min(self.truncation());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Lowest degree at which the two series differ, up to the smaller
    /// truncation.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    /// Formal substitution `t -> t^k`; the truncation is preserved.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let n = self.truncation();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            out[i * k] = c.clone();
        }
        Self { coeffs: out }
    }

    /// Multiplies in place by `1 + sign * t^j`.
    fn mul_binomial(&mut self, j: usize, sign: i32) {
        let n = self.truncation();
        if j > n {
            return;
        }
        for i in (j..=n).rev() {
            let shifted = self.coeffs[i - j].clone();
            if sign > 0 {
                self.coeffs[i] += shifted;
            } else {
                self.coeffs[i] -= shifted;
            }
        }
    }

    /// Divides in place by `1 + sign * t^j` (a geometric series expansion).
    fn div_binomial(&mut self, j: usize, sign: i32) {
        let n = self.truncation();
        if j > n {
            return;
        }
        for i in j..=n {
            let shifted = self.coeffs[i - j].clone();
            if sign > 0 {
                self.coeffs[i] -= shifted;
            } else {
                self.coeffs[i] += shifted;
            }
        }
    }
}

/// Cauchy product, truncated at the smaller of the two truncations.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let n = a.truncation().min(b.truncation());
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, x) in a.coeffs[..=n].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=n - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    TruncatedSeries { coeffs: out }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        series_mul(self, rhs)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.truncation().min(rhs.truncation());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.truncation().min(rhs.truncation());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.truncation() + 1)
    }
}

/// Sign inside a binomial factor `1 + t^j` or `1 - t^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorSign {
    Plus,
    Minus,
}

impl FactorSign {
    fn as_i32(self) -> i32 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }
}

/// `prod_{k >= 1} (1 +- t^{step*k + offset})^power`, where a negative
/// power means division.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductFactor {
    pub step: u64,
    pub offset: i64,
    pub sign: FactorSign,
    pub power: i32,
}

impl ProductFactor {
    /// `prod_k (1 +- t^{step*k})^power`
    pub fn new(step: u64, sign: FactorSign, power: i32) -> Self {
        Self {
            step,
            offset: 0,
            sign,
            power,
        }
    }

    fn exponent(&self, k: u64) -> i64 {
        self.step as i64 * k as i64 + self.offset
    }
}

pub fn product_form(
    factors: &[ProductFactor],
    truncation: usize,
) -> Result<TruncatedSeries, SeriesError> {
    for f in factors {
        if f.step == 0 || f.exponent(1) <= 0 {
            return Err(SeriesError::NonPositiveExponent {
                step: f.step,
                offset: f.offset,
            });
        }
    }
    let mut out = TruncatedSeries::one(truncation);
    for f in factors {
        let sign = f.sign.as_i32();
        let mut k = 1;
        while f.exponent(k) as usize <= truncation {
            let j = f.exponent(k) as usize;
            for _ in 0..f.power.unsigned_abs() {
                if f.power > 0 {
                    out.mul_binomial(j, sign);
                } else {
                    out.div_binomial(j, sign);
                }
            }
            k += 1;
        }
    }
    Ok(out)
}

/// Indicator series of `{ rule(k) : k >= 0 }`. The rule must be strictly
/// increasing.
pub fn theta_series(rule: impl Fn(u64) -> u64, truncation: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::zero(); truncation + 1];
    let mut k = 0u64;
    let mut last = None;
    loop {
        let x = rule(k);
        if let Some(prev) = last {
            assert!(x > prev, "theta exponent rule must be strictly increasing");
        }
        if x as usize > truncation {
            break;
        }
        coeffs[x as usize] = BigInt::one();
        last = Some(x);
        k += 1;
    }
    TruncatedSeries { coeffs }
}

pub fn triangular(k: u64) -> u64 {
    k * (k + 1) / 2
}

pub fn pronic(k: u64) -> u64 {
    k * (k + 1)
}

fn product(factors: &[ProductFactor], truncation: usize) -> TruncatedSeries {
    product_form(factors, truncation).expect("built-in factors have positive exponents")
}

/// `sum t^{k(k+1)/2}` against `prod (1 + t^k)(1 - t^{2k})`.
pub fn jacobi_triangular_mismatch(truncation: usize) -> Option<usize> {
    let lhs = theta_series(triangular, truncation);
    let rhs = product(
        &[
            ProductFactor::new(1, FactorSign::Plus, 1),
            ProductFactor::new(2, FactorSign::Minus, 1),
        ],
        truncation,
    );
    lhs.first_mismatch(&rhs)
}

pub fn check_jacobi_triangular(truncation: usize) -> bool {
    jacobi_triangular_mismatch(truncation).is_none()
}

/// `sum t^{k(k+1)}` against `prod (1 + t^{2k})(1 - t^{4k})`.
pub fn jacobi_doubled_mismatch(truncation: usize) -> Option<usize> {
    let lhs = theta_series(pronic, truncation);
    let rhs = product(
        &[
            ProductFactor::new(2, FactorSign::Plus, 1),
            ProductFactor::new(4, FactorSign::Minus, 1),
        ],
        truncation,
    );
    lhs.first_mismatch(&rhs)
}

pub fn check_jacobi_doubled(truncation: usize) -> bool {
    jacobi_doubled_mismatch(truncation).is_none()
}

/// The labelling sets whose sizes have product generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CountFamily {
    /// Unipotent-class labels, `prod (1+t^k)^2 / (1-t^k)`.
    #[serde(rename = "scU")]
    ScU,
    /// Weight labels, `prod 1/(1-t^k)^2 * sum t^{k(k+1)/2}`.
    #[serde(rename = "scT")]
    ScT,
    /// Delta-invariant unipotent labels, `prod 1/(1-t^k) * prod (1+t^{2k})`.
    #[serde(rename = "scU1")]
    ScU1,
    /// Delta-invariant weight labels,
    /// `prod 1/(1-t^k) * prod 1/(1-t^{4k}) * sum t^{k(k+1)}`.
    #[serde(rename = "scT1prime")]
    ScT1Prime,
}

impl CountFamily {
    pub const ALL: [CountFamily; 4] = [Self::ScU, Self::ScT, Self::ScU1, Self::ScT1Prime];

    pub fn name(self) -> &'static str {
        match self {
            Self::ScU => "scU",
            Self::ScT => "scT",
            Self::ScU1 => "scU1",
            Self::ScT1Prime => "scT1prime",
        }
    }
}

pub fn gf_counts(which: CountFamily, truncation: usize) -> TruncatedSeries {
    use FactorSign::*;
    match which {
        CountFamily::ScU => product(
            &[ProductFactor::new(1, Plus, 2), ProductFactor::new(1, Minus, -1)],
            truncation,
        ),
        CountFamily::ScT => &product(&[ProductFactor::new(1, Minus, -2)], truncation)
            * &theta_series(triangular, truncation),
        CountFamily::ScU1 => product(
            &[ProductFactor::new(1, Minus, -1), ProductFactor::new(2, Plus, 1)],
            truncation,
        ),
        CountFamily::ScT1Prime => &product(
            &[ProductFactor::new(1, Minus, -1), ProductFactor::new(4, Minus, -1)],
            truncation,
        ) * &theta_series(pronic, truncation),
    }
}

/// One line of the identity report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_degree: usize,
    pub first_mismatch: Option<usize>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Both Jacobi identities and the two generating-function equalities they
/// imply.
pub fn identity_suite(max_degree: usize) -> Vec<IdentityCheck> {
    let check = |name, first_mismatch| IdentityCheck {
        name,
        max_degree,
        first_mismatch,
    };
    vec![
        check("jacobi_triangular", jacobi_triangular_mismatch(max_degree)),
        check("jacobi_doubled", jacobi_doubled_mismatch(max_degree)),
        check(
            "gf_scU_eq_scT",
            gf_counts(CountFamily::ScU, max_degree)
                .first_mismatch(&gf_counts(CountFamily::ScT, max_degree)),
        ),
        check(
            "gf_scU1_eq_scT1prime",
            gf_counts(CountFamily::ScU1, max_degree)
                .first_mismatch(&gf_counts(CountFamily::ScT1Prime, max_degree)),
        ),
    ]
}
