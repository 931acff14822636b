//! Order-preserving sweeps over independent work items.
//!
//! With the `parallel` feature (default) [`Strategy::Parallel`] runs on the
//! rayon pool; without it every strategy runs sequentially. Results are
//! always returned in input order, and searches report the lowest-index hit,
//! so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// True when this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

pub fn map<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// First (lowest index) `Some` produced by `f`.
pub fn find_map_first<T, U, F>(strategy: Strategy, items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().find_map_first(f);
    }
    let _ = strategy;
    items.iter().find_map(f)
}

pub fn all<T, F>(strategy: Strategy, items: &[T], pred: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    find_map_first(strategy, items, |t| (!pred(t)).then_some(())).is_none()
}

pub fn count<T, F>(strategy: Strategy, items: &[T], pred: F) -> usize
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().filter(|t| pred(t)).count();
    }
    let _ = strategy;
    items.iter().filter(|t| pred(t)).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(map(s, &xs, |x| x * x)[999], 999 * 999);
            assert_eq!(find_map_first(s, &xs, |&x| (x % 97 == 96).then_some(x)), Some(96));
            assert!(all(s, &xs, |&x| x < 1000));
            assert!(!all(s, &xs, |&x| x < 999));
            assert_eq!(count(s, &xs, |&x| x % 2 == 0), 500);
        }
    }
}
