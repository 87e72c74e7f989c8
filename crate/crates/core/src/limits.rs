use crate::{Error, Result};

/// Size caps for the exhaustive searches. Exceeding one is an error
/// ([`Error::CapExceeded`]), never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order the constructors will build.
    pub max_group_order: usize,
    /// Largest quandle on which automorphism groups are searched.
    pub max_quandle: usize,
    /// Node budget for backtracking searches and size bound for plain enumerations.
    pub max_search: u128,
    /// Largest cohomology group for which every class representative is listed.
    pub max_representatives: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 512,
            max_quandle: 16,
            max_search: 10_000_000,
            max_representatives: 4096,
        }
    }
}

impl Limits {
    pub(crate) fn check_search(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_search {
            Err(Error::CapExceeded { what, needed, cap: self.max_search })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_quandle(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.max_quandle {
            Err(Error::CapExceeded { what, needed: size as u128, cap: self.max_quandle as u128 })
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn saturating_pow(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, k| acc.saturating_mul(k))
}
