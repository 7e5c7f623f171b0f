use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::FieldError;
use crate::ffpoly::arith;
use crate::ffpoly::field::GaloisField;

/// `F_q` together with the 2-adic data of `q`: `2^{a+1}` is the exact power
/// of 2 dividing `q^2 - 1` and `2^a` divides `q - eps`.
#[derive(Clone)]
pub struct FieldContext {
    field: Arc<GaloisField>,
    a: u32,
    eps: i8,
    caps: Caps,
    factor_cache: Arc<Mutex<BTreeMap<u64, Vec<(u64, u32)>>>>,
}

impl FieldContext {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        Self::with_caps(q, Caps::default())
    }

    pub fn with_caps(q: u64, caps: Caps) -> Result<Self, FieldError> {
        let field = GaloisField::new(q, caps.max_q)?;
        let (a, eps) = if (q - 1).is_multiple_of(4) {
            (arith::v2(q - 1), 1)
        } else {
            (arith::v2(q + 1), -1)
        };
        Ok(Self {
            field: Arc::new(field),
            a,
            eps,
            caps,
            factor_cache: Arc::default(),
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn e(&self) -> u32 {
        self.field.e()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    /// `q^k`, or a cap error when it leaves the range where orders are
    /// computed exactly.
    pub(crate) fn q_pow(&self, k: u32) -> Result<u64, FieldError> {
        arith::checked_pow(self.q() as u64, k).ok_or(FieldError::Cap {
            what: "degree",
            value: k as u64,
            cap: (63.0 / (self.q() as f64).log2()).floor() as u64,
        })
    }

    pub(crate) fn factor(&self, n: u64) -> Vec<(u64, u32)> {
        let mut cache = self.factor_cache.lock().unwrap_or_else(|e| e.into_inner());
        cache.entry(n).or_insert_with(|| arith::factor(n)).clone()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("q", &self.q())
            .field("a", &self.a)
            .field("eps", &self.eps)
            .finish()
    }
}

impl Serialize for FieldContext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FieldContext", 5)?;
        st.serialize_field("p", &self.p())?;
        st.serialize_field("e", &self.e())?;
        st.serialize_field("q", &self.q())?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("eps", &self.eps)?;
        st.end()
    }
}
