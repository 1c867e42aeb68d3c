//! Data-parallel helpers with a sequential fallback.
//!
//! Hot loops (axiom scans, closure rounds, per-element verdicts) go through
//! these wrappers.  With the `parallel` feature (default) they run on rayon;
//! without it they degrade to plain iterators.  All wrappers preserve input
//! order, so results are identical under both backends.

#[cfg(feature = "parallel")]
mod imp {
    use rayon::prelude::*;

    pub fn map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> U + Sync + Send,
    {
        items.par_iter().map(f).collect()
    }

    pub fn flat_map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> Vec<U> + Sync + Send,
    {
        items.par_iter().flat_map_iter(f).collect()
    }

    /// Ordered flat-map over an index range.
    pub fn flat_map_range<U: Send, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
    where
        F: Fn(usize) -> Vec<U> + Sync + Send,
    {
        range.into_par_iter().flat_map_iter(f).collect()
    }

    /// Ordered map over an index range.
    pub fn map_range<U: Send, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
    where
        F: Fn(usize) -> U + Sync + Send,
    {
        range.into_par_iter().map(f).collect()
    }

    pub fn all_range<F>(range: std::ops::Range<usize>, f: F) -> bool
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        range.into_par_iter().all(f)
    }
}

#[cfg(not(feature = "parallel"))]
mod imp {
    pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> U,
    {
        items.iter().map(f).collect()
    }

    pub fn flat_map<T, U, F>(items: &[T], f: F) -> Vec<U>
    where
        F: Fn(&T) -> Vec<U>,
    {
        items.iter().flat_map(f).collect()
    }

    pub fn flat_map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
    where
        F: Fn(usize) -> Vec<U>,
    {
        range.flat_map(f).collect()
    }

    pub fn map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
    where
        F: Fn(usize) -> U,
    {
        range.map(f).collect()
    }

    pub fn all_range<F>(range: std::ops::Range<usize>, f: F) -> bool
    where
        F: Fn(usize) -> bool,
    {
        range.into_iter().all(f)
    }
}

pub(crate) use imp::*;
