//! Size limits for the exhaustive searches.

/// Environment variable that lifts every limit when set to `1`.
pub const OVERRIDE_VAR: &str = "SPW_GUARD_OVERRIDE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest `|B₀|` for the exhaustive subset search.
    pub subset_max_base: usize,
    /// Largest number of summands `k` in the subset search.
    pub subset_max_terms: usize,
    /// Largest number of dilation classes (or candidates) an enumeration may visit.
    pub max_classes: u64,
    /// Largest set on which witness quadruples are searched exhaustively.
    pub witness_max_card: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            subset_max_base: 14,
            subset_max_terms: 3,
            max_classes: 100_000_000,
            witness_max_card: 24,
        }
    }
}

impl Guards {
    pub fn unlimited() -> Self {
        Guards {
            subset_max_base: usize::MAX,
            subset_max_terms: usize::MAX,
            max_classes: u64::MAX,
            witness_max_card: usize::MAX,
        }
    }

    /// Defaults, or [`Guards::unlimited`] when `SPW_GUARD_OVERRIDE=1`.
    pub fn from_env() -> Self {
        match std::env::var(OVERRIDE_VAR) {
            Ok(v) if v == "1" => Self::unlimited(),
            _ => Self::default(),
        }
    }
}
