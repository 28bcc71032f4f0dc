//! Search budgets for the symmetry and canonical-form procedures.

use thiserror::Error;

/// Default budget: estimated candidate count a search may visit.
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

/// Environment variable the CLI reads to override the default budget.
pub const SIZE_LIMIT_ENV: &str = "WLC_SIZE_LIMIT";

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("size limit exceeded: estimated {estimate} candidates, budget {budget} ({context})")]
pub struct SizeError {
    pub estimate: u128,
    pub budget: u128,
    pub context: &'static str,
}

/// Budget for backtracking searches over renamings and orderings. The
/// estimate compared against it is the product of factorials of the
/// signature classes the search branches over, so it bounds the
/// worst-case number of candidate assignments after pruning.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub search_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Limits {
    pub fn with_budget(search_budget: u128) -> Self {
        Limits { search_budget }
    }

    pub fn check(&self, estimate: u128, context: &'static str) -> Result<(), SizeError> {
        if estimate > self.search_budget {
            Err(SizeError {
                estimate,
                budget: self.search_budget,
                context,
            })
        } else {
            Ok(())
        }
    }
}

/// Saturating factorial in u128, capped for budget comparison.
pub(crate) fn factorial(n: usize) -> u128 {
    let mut acc: u128 = 1;
    for k in 2..=n as u128 {
        acc = acc.saturating_mul(k);
    }
    acc
}
