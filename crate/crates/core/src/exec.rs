//! Order-preserving evaluation helpers.
//!
//! With the `parallel` feature (default) the maps fan out across the rayon
//! pool; collection preserves input order and every downstream reduction
//! runs sequentially in index order, so results are bit-identical with and
//! without the feature. The `_seq` twins stay available unconditionally so
//! benchmarks can compare both paths in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub fn map_indices_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_bitwise() {
        let items: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01 - 5.0).collect();
        let f = |x: &f64| (x.sin() * x.exp()).atan();
        let a = map_collect(&items, f);
        let b = map_collect_seq(&items, f);
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
        let g = |i: usize| ((i as f64).sqrt() * 1.7).cos();
        assert_eq!(map_indices(1000, g), map_indices_seq(1000, g));
    }
}
