//! Order-preserving parallel map. Results are placed by index, so the output
//! never depends on the number of workers.

/// Maps `f` over `items`. `threads`: `None` uses the global pool, `Some(1)`
/// runs inline, `Some(k)` uses a dedicated pool of `k` workers.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], threads: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match threads {
        Some(1) => items.iter().map(f).collect(),
        None => items.par_iter().map(f).collect(),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], _threads: Option<usize>, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}
