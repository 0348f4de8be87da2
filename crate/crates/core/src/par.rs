//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the helpers run on the rayon pool that is
//! current at the call site; results are always in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First `Some` in input order.
#[cfg(feature = "parallel")]
pub fn find_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    F: Fn(&T) -> Option<R>,
{
    items.iter().find_map(f)
}

/// First `Some` over `0..len` in index order.
#[cfg(feature = "parallel")]
pub fn find_first_index<R, F>(len: u64, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    (0..len).into_par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_first_index<R, F>(len: u64, f: F) -> Option<R>
where
    F: Fn(u64) -> Option<R>,
{
    (0..len).find_map(f)
}

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
