//! Data-parallel map over independent jobs. Without the `parallel` feature
//! everything runs on the calling thread.

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "HYPB_THREADS";

/// Worker cap from `HYPB_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

/// Number of workers `par_map` will use.
pub fn workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        let avail = std::thread::available_parallelism().map_or(1, |n| n.get());
        thread_cap().unwrap_or(avail)
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Order-preserving map, sequential.
pub fn seq_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Order-preserving map over `items`, in parallel when the feature is on.
#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    let n = workers();
    if n <= 1 || items.len() <= 1 {
        return seq_map(items, f);
    }
    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => seq_map(items, f),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    seq_map(items, f)
}
