use num_bigint::BigUint;
use num_traits::One;

/// Feasibility limits. These are configuration, not constants: every
/// rejection names the guard that fired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guards {
    /// Largest group order any construction may produce.
    pub order: BigUint,
    /// Largest permutation degree any construction may produce.
    pub degree: usize,
    /// Largest order for which element-level enumeration is allowed.
    pub oracle_order: u64,
    /// Largest index handled by the low-index subgroup search.
    pub low_index: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            order: BigUint::one() << 256u32,
            degree: 10_000,
            oracle_order: 5000,
            low_index: 12,
        }
    }
}

/// Working precision (number of known terms) for series when nothing else is specified.
pub const DEFAULT_PRECISION: usize = 32;

/// Reads `GW_PRECISION`, falling back to [`DEFAULT_PRECISION`].
pub fn default_precision() -> usize {
    std::env::var("GW_PRECISION")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&p| p > 0)
        .unwrap_or(DEFAULT_PRECISION)
}
