//! Batch mapping over independent work items.
//!
//! With the `parallel` feature (on by default) batches fan out over a rayon
//! pool sized by the worker count; without it, or with one worker, they run
//! sequentially. Output order always matches input order, so results are
//! identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the items on `workers` threads. One worker runs inline;
/// zero lets the pool pick its own size.
pub fn map_batch<T, U, F>(items: Vec<T>, workers: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if workers != 1 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
        if let Ok(pool) = pool {
            return pool.install(|| items.into_par_iter().map(&f).collect());
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    map_batch_seq(items, f)
}

/// The sequential reference path, available regardless of features.
pub fn map_batch_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<u64> = (0..500).collect();
        let seq = map_batch_seq(items.clone(), |x| x * x);
        for workers in [0, 1, 2, 7] {
            assert_eq!(map_batch(items.clone(), workers, |x| x * x), seq);
        }
    }

    #[test]
    fn empty_batches_work() {
        let out: Vec<u32> = map_batch(Vec::<u32>::new(), 4, |x| x);
        assert!(out.is_empty());
    }
}
