//! Worker count and enumeration budget shared by the exhaustive routines.

use crate::error::{Error, Result};

/// Largest height box enumerated unless configured otherwise.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exec {
    workers: Option<usize>,
    budget: u128,
}

impl Default for Exec {
    fn default() -> Self {
        Exec {
            workers: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Exec {
    /// `0` or `None` means the global rayon pool.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = (workers > 0).then_some(workers);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    pub fn check_budget(&self, required: u128) -> Result<()> {
        if required > self.budget {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn install<R, F>(&self, f: F) -> R
    where
        R: Send,
        F: FnOnce() -> R + Send,
    {
        match self.workers {
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}
