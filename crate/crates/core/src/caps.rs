//! Safety limits on the size of enumerations.

use serde::Serialize;

/// Setting this environment variable to `1` lifts every cap.
pub const NO_CAPS_ENV: &str = "SPALPERIN_UNSAFE_NO_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest field size (the arithmetic tables have `q^2` entries).
    pub max_q: u64,
    /// Largest polynomial degree handled by enumeration.
    pub max_degree: u32,
    /// Largest number of monic polynomials scanned in one degree.
    pub max_sieve: u64,
    /// Largest `n` for full block enumeration of `Sp_{2n}(q)`.
    pub max_block_rank: u32,
    /// Largest `q` for full block enumeration.
    pub max_block_q: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_q: 100,
            max_degree: 12,
            max_sieve: 1 << 24,
            max_block_rank: 6,
            max_block_q: 13,
        }
    }
}

impl Caps {
    pub fn unlimited() -> Self {
        Self {
            max_q: u16::MAX as u64,
            max_degree: u32::MAX,
            max_sieve: u64::MAX,
            max_block_rank: u32::MAX,
            max_block_q: u64::MAX,
        }
    }

    /// Default caps unless [`NO_CAPS_ENV`] is set to `1`.
    pub fn from_env() -> Self {
        match std::env::var(NO_CAPS_ENV) {
            Ok(v) if v == "1" => Self::unlimited(),
            _ => Self::default(),
        }
    }
}
