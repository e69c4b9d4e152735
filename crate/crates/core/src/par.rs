//! Thin dispatch layer between the rayon-backed and sequential code paths.
//!
//! Every caller partitions its work into independent items and merges by
//! ordered collection, so both paths produce bit-identical results.

/// Runs `f` on a dedicated thread pool with `workers` threads when the
/// `parallel` feature is enabled; otherwise (or for `None`) runs it inline on
/// the default pool / current thread.
pub fn with_worker_threads<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        match workers {
            Some(n) if n >= 1 => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("build worker pool")
                .install(f),
            _ => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

/// Ordered map over `items` with a per-worker scratch value, parallel when
/// the feature is on. Output order always matches input order.
pub(crate) fn ordered_map_scratch<I, S, T, FI, FM>(items: &[I], init: FI, f: FM) -> Vec<T>
where
    I: Sync,
    T: Send,
    S: Send,
    FI: Fn() -> S + Sync + Send,
    FM: Fn(&mut S, &I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map_init(init, |s, it| f(s, it)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut s = init();
        items.iter().map(|it| f(&mut s, it)).collect()
    }
}
