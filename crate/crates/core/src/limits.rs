//! Enumeration caps.

/// Environment variable overriding [`Limits::max_enum_bits`].
pub const MAX_ENUM_ENV: &str = "STABCI_MAX_ENUM";

/// Upper bounds on exhaustive work. All exponents are base 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest enumeration, as `log2` of the number of visited strings.
    pub max_enum_bits: u32,
    /// Largest group whose elements may be listed, as `log2 |H|`.
    pub max_group_rank: u32,
    /// Largest register for dense density matrices.
    pub max_dense_qubits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_enum_bits: 28,
            max_group_rank: 26,
            max_dense_qubits: 12,
        }
    }
}

impl Limits {
    /// Defaults, with `STABCI_MAX_ENUM` (a base-2 exponent) replacing both
    /// enumeration caps when set.
    pub fn from_env() -> Result<Self, String> {
        let mut limits = Self::default();
        if let Ok(raw) = std::env::var(MAX_ENUM_ENV) {
            let bits: u32 = raw
                .trim()
                .parse()
                .map_err(|_| format!("{MAX_ENUM_ENV}={raw} is not a non-negative integer"))?;
            if bits > 62 {
                return Err(format!("{MAX_ENUM_ENV}={bits} exceeds 62"));
            }
            limits.max_enum_bits = bits;
            limits.max_group_rank = bits;
        }
        Ok(limits)
    }
}
