//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) work items are spread over a rayon
//! pool; without it, or with [`Parallelism::Sequential`], they run in order on
//! the calling thread. Results are always returned in input order, so callers
//! that reduce them deterministically get identical answers either way.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Parallelism {
    Sequential,
    /// Use a pool of the given size; `0` means the global rayon pool.
    Threads(usize),
    #[default]
    Auto,
}

impl Parallelism {
    pub fn from_workers(workers: Option<usize>) -> Self {
        match workers {
            None => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(n) => Parallelism::Threads(n),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Parallelism::Sequential
    }
}

/// Maps `f` over `items`, returning results in input order.
pub fn map<T, R, F>(items: &[T], parallelism: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match parallelism {
            Parallelism::Sequential => {}
            Parallelism::Auto | Parallelism::Threads(0) => {
                return items.par_iter().map(&f).collect();
            }
            Parallelism::Threads(n) => {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    return pool.install(|| items.par_iter().map(&f).collect());
                }
            }
        }
    }
    let _ = parallelism;
    items.iter().map(f).collect()
}

/// Returns the first item (in input order) for which `f` yields `Some`.
pub fn find_first<T, R, F>(items: &[T], parallelism: Parallelism, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match parallelism {
            Parallelism::Sequential => {}
            Parallelism::Auto | Parallelism::Threads(0) => {
                return items.par_iter().find_map_first(&f);
            }
            Parallelism::Threads(n) => {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                    return pool.install(|| items.par_iter().find_map_first(&f));
                }
            }
        }
    }
    let _ = parallelism;
    items.iter().find_map(f)
}
