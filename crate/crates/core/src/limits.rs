//! Resource guards for the exhaustive parts of the workbench.
//!
//! Every exponential computation checks its input against one of these caps
//! and fails with [`Error::LimitExceeded`] rather than running unbounded.

use crate::error::{Error, Result};

/// Environment variable that overrides the size guards.
pub const MAX_SIZE_ENV: &str = "UA_MAX_SIZE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of assignments an identity check may enumerate.
    pub identity_assignments: u64,
    /// Largest universe for which the congruence lattice is materialized.
    pub congruence_size: usize,
    /// Largest universe for which all subuniverses are enumerated.
    pub subuniverse_size: usize,
    /// Largest universe for which the unary polynomial clone is materialized.
    pub polynomial_size: usize,
    /// Largest universe for directoid enumeration.
    pub directoid_size: usize,
    /// Largest number of algebras an exhaustive enumeration may produce.
    pub exhaustive_algebras: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            identity_assignments: 10_000_000,
            congruence_size: 12,
            subuniverse_size: 16,
            polynomial_size: 7,
            directoid_size: 4,
            exhaustive_algebras: 1_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with the three size guards raised or lowered to `UA_MAX_SIZE`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(size) = std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            limits = limits.with_max_size(size);
        }
        limits
    }

    pub fn with_max_size(mut self, size: usize) -> Self {
        self.congruence_size = size;
        self.subuniverse_size = size;
        self.polynomial_size = size;
        self
    }

    pub(crate) fn check(what: &'static str, actual: u64, limit: u64) -> Result<()> {
        if actual > limit {
            Err(Error::LimitExceeded {
                what,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }
}
