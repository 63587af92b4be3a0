//! Batch evaluation. With the `parallel` feature (default) work items are
//! spread over the rayon pool; without it everything runs on the caller's
//! thread. Output order always follows input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether [`map`] runs on the rayon pool.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Applies `f` to every item, in parallel when the feature is enabled.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// Applies `f` to every item on the calling thread.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}
