//! Order-preserving data-parallel helpers. With the `parallel` feature these
//! run on the rayon pool; without it they are plain sequential iterators.
//! Either way the output is identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(range: std::ops::Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(range: std::ops::Range<u64>, f: F) -> Vec<R>
where
    F: Fn(u64) -> R,
{
    range.map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter<T, F>(items: &[T], keep: F) -> Vec<T>
where
    T: Sync + Send + Copy,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().copied().filter(|x| keep(x)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter<T, F>(items: &[T], keep: F) -> Vec<T>
where
    T: Copy,
    F: Fn(&T) -> bool,
{
    items.iter().copied().filter(|x| keep(x)).collect()
}

/// Counts indices in `range` satisfying `pred`. Integer sums, so the result
/// does not depend on how work is split.
#[cfg(feature = "parallel")]
pub fn count_range<F>(range: std::ops::Range<u64>, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    range.into_par_iter().filter(|&i| pred(i)).count() as u64
}

#[cfg(not(feature = "parallel"))]
pub fn count_range<F>(range: std::ops::Range<u64>, pred: F) -> u64
where
    F: Fn(u64) -> bool,
{
    range.filter(|&i| pred(i)).count() as u64
}
