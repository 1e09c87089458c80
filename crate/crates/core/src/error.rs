use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} needs {size} items, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: BigUint,
        cap: u64,
    },

    #[error("{0} is not helow")]
    NotHelow(String),

    #[error("{0} is not a surreal number")]
    NotSurreal(String),

    #[error("sort error: {0}")]
    Sort(String),

    #[error("unbound variable `{0}`")]
    Unbound(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed structure: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl Into<BigUint>, cap: u64) -> Self {
        Error::CapExceeded {
            what,
            size: size.into(),
            cap,
        }
    }

    /// Cap error for a quantity of `2^exp` items.
    pub(crate) fn cap_pow2(what: &'static str, exp: usize, cap: u64) -> Self {
        Error::CapExceeded {
            what,
            size: BigUint::from(1u8) << exp,
            cap,
        }
    }
}

/// Resource limits for exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest set any constructor may materialize.
    pub max_elements: u64,
    /// Largest number of second-order instances a single quantifier may range over.
    pub max_instances: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: 1 << 16,
            max_instances: 1 << 24,
        }
    }
}
