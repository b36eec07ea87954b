use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension bounds differ: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("insufficient truncation: need dim bound {needed}, have {available} ({context})")]
    InsufficientTruncation {
        needed: usize,
        available: usize,
        context: String,
    },

    #[error("step budget of {limit} exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("search cancelled")]
    Cancelled,

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("unknown object: {0}")]
    UnknownObject(String),

    #[error("edge {edge} in degree 1 is not an equivalence in the target ({context})")]
    NotAnEquivalence { edge: usize, context: String },

    #[error("equivalence edge {edge} admits no extension along Δ[1] → J up to degree {degree}")]
    NoExtension { edge: usize, degree: usize },

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shared step counter for exhaustive searches.
///
/// A budget is spent by every candidate tried in a backtracking search. It is
/// safe to share between threads; `cancel` aborts every search polling it.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    spent: AtomicU64,
    cancelled: AtomicBool,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 50_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            spent: AtomicU64::new(0),
            cancelled: AtomicBool::new(false),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }

    pub fn cancel(&self) {
        self.cancelled.store(true, Ordering::Relaxed);
    }

    #[inline]
    pub fn spend(&self, steps: u64) -> Result<()> {
        if self.cancelled.load(Ordering::Relaxed) {
            return Err(Error::Cancelled);
        }
        let prev = self.spent.fetch_add(steps, Ordering::Relaxed);
        if prev.saturating_add(steps) > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_LIMIT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_trips_after_limit() {
        let b = Budget::new(10);
        assert!(b.spend(10).is_ok());
        assert_eq!(b.spend(1), Err(Error::BudgetExceeded { limit: 10 }));
    }

    #[test]
    fn cancelled_budget_refuses_work() {
        let b = Budget::unlimited();
        b.cancel();
        assert_eq!(b.spend(1), Err(Error::Cancelled));
    }
}
