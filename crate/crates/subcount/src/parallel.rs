//! Thread-pool executor for bag evaluation.

use rayon::prelude::*;
use subcount_core::Executor;

/// Runs tasks on a dedicated rayon pool; results come back in index order,
/// so output never depends on the thread count.
pub struct Parallel {
    pool: rayon::ThreadPool,
}

impl Parallel {
    /// `None` uses one thread per available core.
    pub fn new(threads: Option<usize>) -> Result<Self, rayon::ThreadPoolBuildError> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            b = b.num_threads(n.max(1));
        }
        Ok(Parallel { pool: b.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Parallel {
    fn map<T, F>(&self, len: usize, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..len).into_par_iter().map(task).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_index_order() {
        let p = Parallel::new(Some(4)).unwrap();
        assert_eq!(p.threads(), 4);
        assert_eq!(p.map(1000, |i| i * 2), (0..1000).map(|i| i * 2).collect::<Vec<_>>());
    }
}
