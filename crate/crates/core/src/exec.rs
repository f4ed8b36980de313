//! Execution strategy for the data-parallel loops (subset sums, polynomial
//! products, catalog runs, numeric grids).
//!
//! With the `parallel` feature the [`Exec::Parallel`] strategy dispatches to
//! rayon; without it every strategy runs sequentially, so callers never need
//! to be feature-aware.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// True when this strategy will actually fan out work.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving map over an index range.
    pub fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }

    /// Map-reduce with an associative `combine`; `identity` must be neutral.
    pub fn fold<T, A, Id, F, C>(self, items: &[T], identity: Id, f: F, combine: C) -> A
    where
        T: Sync,
        A: Send,
        Id: Fn() -> A + Sync + Send,
        F: Fn(A, &T) -> A + Sync + Send,
        C: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items
                .par_iter()
                .fold(&identity, &f)
                .reduce(&identity, &combine);
        }
        items.iter().fold(identity(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Exec::Parallel, Exec::Sequential] {
            assert_eq!(exec.map(&xs, |x| x * 2)[999], 1998);
            let s = exec.fold(&xs, || 0u64, |a, x| a + x, |a, b| a + b);
            assert_eq!(s, 499_500);
            assert_eq!(exec.map_range(0..5, |i| i * i), vec![0, 1, 4, 9, 16]);
        }
    }
}
