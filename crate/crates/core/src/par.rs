//! Execution mode for the data-parallel inner loops.
//!
//! All parallel work is expressed as "map block `i` to a partial result, then
//! merge partials in index order". Block boundaries never depend on the thread
//! count, so both modes produce identical bits.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Uses the rayon pool. Falls back to sequential when the crate is built
    /// without the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `0..n`, returning results in index order.
    pub fn map_blocks<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }
}

/// Sizes the global rayon pool. A no-op without the `parallel` feature.
pub fn init_threads(threads: usize) -> Result<()> {
    if threads == 0 {
        return Err(Error::arg("thread count must be at least 1"));
    }
    #[cfg(feature = "parallel")]
    {
        // A second initialization keeps the existing pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_on_order() {
        let seq = Exec::Sequential.map_blocks(100, |i| i * i);
        let par = Exec::Parallel.map_blocks(100, |i| i * i);
        assert_eq!(seq, par);
        assert_eq!(seq[7], 49);
    }

    #[test]
    fn zero_threads_rejected() {
        assert!(init_threads(0).is_err());
    }
}
