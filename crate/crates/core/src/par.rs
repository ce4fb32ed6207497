//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the heavy batches — the
//! axiom suite and the full property matrix — fan out over a rayon pool;
//! without it the same call sites run sequentially. Results come back in
//! input order either way, so output is identical across both builds.

/// Applies `f` to every item, preserving order.
#[cfg(feature = "parallel")]
pub fn map_collect<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Send + Sync,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Applies `f` to every item, preserving order.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Send + Sync,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_input_order() {
        let out = map_collect((0..100).collect(), |n: i64| n * n);
        assert_eq!(out, (0..100).map(|n| n * n).collect::<Vec<_>>());
    }
}
