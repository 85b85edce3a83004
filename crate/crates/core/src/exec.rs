//! Execution strategy for the data-parallel loops (pair verification,
//! component refinement, batch classification).
//!
//! With the `parallel` feature the default is rayon; without it everything
//! runs on the calling thread. Results never depend on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Execution {
    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Fold over `0..n` with an associative `combine`. Each worker starts
    /// from `init()`.
    #[cfg_attr(not(feature = "parallel"), allow(unused_variables))]
    pub fn fold_range<A, I, F, C>(self, n: usize, init: I, fold: F, combine: C) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        C: Fn(A, A) -> A + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).fold(init(), fold),
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n)
                .into_par_iter()
                .fold(&init, &fold)
                .reduce(&init, &combine),
        }
    }
}
