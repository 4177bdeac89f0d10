use thiserror::Error;

/// Errors surfaced by the counting, expansion and integration engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value fell outside its allowed range (indices, sine cutoffs, bounds).
    #[error("{what} = {value} is out of range {range}")]
    Range {
        what: &'static str,
        value: String,
        range: String,
    },

    /// An engine refused work that would exceed a configured limit.
    #[error("{what} {requested} exceeds the configured cap of {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    /// A mathematical precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Instance text could not be parsed.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn range(what: &'static str, value: impl ToString, range: impl ToString) -> Self {
        Error::Range {
            what,
            value: value.to_string(),
            range: range.to_string(),
        }
    }

    pub(crate) fn resource(what: &'static str, requested: u128, cap: u128) -> Self {
        Error::ResourceLimit {
            what,
            requested,
            cap,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
