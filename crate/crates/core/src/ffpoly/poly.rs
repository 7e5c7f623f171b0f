use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::FieldError;
use crate::ffpoly::field::GaloisField;

/// A monic polynomial over `F_q`, coefficients little-endian.
///
/// Ordered by field size, then degree, then coefficients compared from the
/// constant term upwards. Serialises as the bare coefficient array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    q: u32,
    coeffs: Vec<u32>,
}

impl FqPoly {
    pub fn new(field: &GaloisField, coeffs: Vec<u32>) -> Result<Self, FieldError> {
        if let Some(&bad) = coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(FieldError::BadCoefficient(bad));
        }
        let coeffs = GaloisField::trim(coeffs);
        if coeffs.last() != Some(&1) || coeffs.len() < 2 {
            return Err(FieldError::NotMonic);
        }
        Ok(Self { q: field.q(), coeffs })
    }

    /// Skips validation; callers guarantee a monic, trimmed vector.
    pub(crate) fn from_raw(q: u32, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs.last(), Some(&1));
        Self { q, coeffs }
    }

    pub fn x(field: &GaloisField) -> Self {
        Self::from_raw(field.q(), vec![0, 1])
    }

    pub fn x_minus_one(field: &GaloisField) -> Self {
        Self::from_raw(field.q(), vec![field.neg(1), 1])
    }

    pub fn x_plus_one(field: &GaloisField) -> Self {
        Self::from_raw(field.q(), vec![1, 1])
    }

    /// The monic polynomial of degree `degree` whose lower coefficients are
    /// the base-`q` digits of `index`, constant term most significant.
    /// Increasing `index` walks the polynomials in increasing order.
    pub fn from_index(q: u32, degree: u32, index: u64) -> Self {
        let mut coeffs = vec![0; degree as usize + 1];
        let mut rest = index;
        for j in (0..degree as usize).rev() {
            coeffs[j] = (rest % q as u64) as u32;
            rest /= q as u64;
        }
        coeffs[degree as usize] = 1;
        Self { q, coeffs }
    }

    /// Inverse of [`FqPoly::from_index`].
    pub fn index(&self) -> u64 {
        self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn constant(&self) -> u32 {
        self.coeffs[0]
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.q, self.coeffs.len())
            .cmp(&(other.q, other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for FqPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}*x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}
