//! Data-parallel map helpers. With the `parallel` feature the work is
//! spread over the rayon pool (honoring `RAYON_NUM_THREADS`); without it
//! the same entry points run serially. `map_serial` is always available
//! so benchmarks can compare both paths in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over indices `0..n`, in parallel when the feature is enabled.
/// Output order matches input order either way.
pub fn map_indexed<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Serial reference path, independent of feature flags.
pub fn map_indexed_serial<R>(n: usize, f: impl Fn(usize) -> R) -> Vec<R> {
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_serial_agree() {
        let a = map_indexed(100, |i| i * i);
        let b = map_indexed_serial(100, |i| i * i);
        assert_eq!(a, b);
    }
}
