//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel routine partitions its work into a fixed list of
//! independent jobs and recombines the results in job order, so the output
//! does not depend on the execution strategy or the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Default number of enumerated items (assignments or subsets) allowed
/// before an exact routine gives up.
pub const DEFAULT_BUDGET: u64 = 10_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub budget: u64,
    pub execution: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            budget: DEFAULT_BUDGET,
            execution: Execution::default(),
        }
    }
}

impl Options {
    pub fn sequential() -> Self {
        Options {
            execution: Execution::Sequential,
            ..Options::default()
        }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        Options { budget, ..self }
    }

    pub(crate) fn check_budget(&self, required: u128) -> crate::Result<()> {
        if required > self.budget as u128 {
            Err(crate::Error::BudgetExceeded {
                required,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel; results stay in index order.
pub fn map_indexed<T, F>(execution: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}
