//! Order-preserving parallel maps over a corpus.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Thread pool with a fixed worker count; `0` means one per core.
pub struct Workers {
    pool: ThreadPool,
}

impl Workers {
    pub fn new(jobs: usize) -> Self {
        let pool = ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool starts");
        Workers { pool }
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Runs `f` inside the pool, so nested rayon work uses its threads.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    /// Applies `f` to every item; results keep input order.
    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(f).collect())
    }
}
