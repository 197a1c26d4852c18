//! Pluggable execution of independent per-subgraph tasks.

use alloc::vec::Vec;

/// Runs `len` independent tasks and returns their results in index order.
///
/// Implementations may run tasks concurrently, but the returned vector must
/// always be ordered by task index so downstream reductions stay
/// deterministic.
pub trait Executor: Sync {
    fn map<T, F>(&self, len: usize, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs every task on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, len: usize, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..len).map(task).collect()
    }
}

/// Collects per-task results, surfacing the lowest-index error.
pub fn try_map<E, T, X, F>(exec: &E, len: usize, task: F) -> Result<Vec<T>, X>
where
    E: Executor,
    T: Send,
    X: Send,
    F: Fn(usize) -> Result<T, X> + Sync + Send,
{
    exec.map(len, task).into_iter().collect()
}

impl<E: Executor> Executor for &E {
    fn map<T, F>(&self, len: usize, task: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (**self).map(len, task)
    }
}
