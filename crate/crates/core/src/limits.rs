use serde::{Deserialize, Serialize};

pub const DEFAULT_ENUMERATION_CAP: usize = 25;
pub const DEFAULT_TERM_CAP: usize = 1 << 20;

/// Work limits shared by the enumerating engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest `n` for which all `2^n` sign vectors are enumerated.
    pub enumeration_cap: usize,
    /// Largest number of distinct frequencies an expansion may hold.
    pub term_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            term_cap: DEFAULT_TERM_CAP,
        }
    }
}
