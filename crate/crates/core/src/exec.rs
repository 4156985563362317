//! Sequential or rayon-backed execution of independent replications.
//!
//! Results always come back in replication order, so any reduction done
//! afterwards is identical whichever strategy produced them.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Defaults to `Parallel` when the feature is enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    pub(crate) fn map_runs<T, E, F>(self, runs: usize, f: F) -> Result<Vec<T>, E>
    where
        T: Send,
        E: Send,
        F: Fn(usize) -> Result<T, E> + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..runs).map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..runs).into_par_iter().map(f).collect(),
        }
    }
}
