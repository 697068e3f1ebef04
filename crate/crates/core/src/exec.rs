//! Execution strategy for the data-parallel sweeps (falsifier grids,
//! property suites, exhaustive enumerations).
//!
//! With the `parallel` feature the [`Exec::Parallel`] strategy fans work out
//! over rayon's global pool. Without it, both strategies run sequentially,
//! so results never depend on the feature set.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run work in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Returns the hit with the smallest index, if any. The answer is the
    /// same for both strategies.
    pub fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<(usize, R)>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().enumerate().find_map_first(|(i, t)| f(t).map(|r| (i, r))),
            _ => items.iter().enumerate().find_map(|(i, t)| f(t).map(|r| (i, r))),
        }
    }

    /// Counts items satisfying `pred`.
    pub fn count<T, F>(self, items: &[T], pred: F) -> usize
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().filter(|t| pred(t)).count(),
            _ => items.iter().filter(|t| pred(t)).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..500).collect();
        let f = |x: &u64| if x % 37 == 36 { Some(x * 2) } else { None };
        assert_eq!(Exec::Sequential.find_first(&xs, f), Exec::Parallel.find_first(&xs, f));
        assert_eq!(Exec::Sequential.find_first(&xs, f), Some((36, 72)));
        assert_eq!(Exec::Sequential.map(&xs, |x| x + 1), Exec::Parallel.map(&xs, |x| x + 1));
        assert_eq!(Exec::Parallel.count(&xs, |x| x % 2 == 0), 250);
    }
}
