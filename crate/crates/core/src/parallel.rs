//! Order-preserving fan-out over independent work items.
//!
//! With the default `parallel` feature the map runs on the rayon pool;
//! without it the same call degrades to a sequential loop. Results always
//! come back in input order, so callers are deterministic either way.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Sequential reference path, kept unconditionally so benchmarks can compare
/// it against [`par_map`] in the same build.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let items: Vec<u64> = (0..64).collect();
        let doubled = par_map(&items, |x| 2 * x);
        assert_eq!(doubled, seq_map(&items, |x| 2 * x));
    }
}
