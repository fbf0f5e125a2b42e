//! Execution strategy for the sampling loops.
//!
//! The crate's hot loops (Haar clouds, orbit/ε ellipse sweeps) are expressed
//! through the two combinators below so that the rayon path and the
//! sequential fallback share one body. Results are bitwise identical across
//! strategies because every task depends only on its index: merges are
//! restricted to associative, commutative, order-insensitive operations
//! (pointwise `max`, argmax with index tie-breaking).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How to schedule indexed sampling work.
///
/// `Parallel` is a no-op request when the crate is built without the
/// `parallel` feature; the sequential fallback then runs unconditionally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Serial,
}

/// `(0..count).map(task)` under the chosen strategy, preserving index order
/// in the output.
pub fn map_indexed<T, F>(exec: Exec, count: usize, task: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        return (0..count).into_par_iter().map(task).collect();
    }
    let _ = exec;
    (0..count).map(task).collect()
}

/// Fold `(0..count)` into an accumulator and merge partial accumulators.
///
/// `merge` must be associative and commutative with `init()` as identity;
/// under that contract the result does not depend on how rayon splits the
/// range.
pub fn fold_indexed<T, I, S, M>(exec: Exec, count: usize, init: I, step: S, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    S: Fn(T, usize) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        return (0..count)
            .into_par_iter()
            .fold(&init, &step)
            .reduce(&init, merge);
    }
    let _ = merge;
    (0..count).fold(init(), step)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_matches_serial() {
        let par = map_indexed(Exec::Parallel, 1000, |i| (i * i) as u64);
        let ser = map_indexed(Exec::Serial, 1000, |i| (i * i) as u64);
        assert_eq!(par, ser);
    }

    #[test]
    fn fold_max_matches_serial() {
        // f64 max is associative and commutative, the model merge for this crate.
        let task = |i: usize| ((i as f64) * 0.7).sin();
        let run = |exec| {
            fold_indexed(
                exec,
                10_000,
                || f64::NEG_INFINITY,
                |acc, i| acc.max(task(i)),
                f64::max,
            )
        };
        assert_eq!(run(Exec::Parallel).to_bits(), run(Exec::Serial).to_bits());
    }

    #[test]
    fn empty_range_yields_identity() {
        let v = fold_indexed(Exec::Parallel, 0, || -1.0f64, |acc, _| acc + 1.0, f64::max);
        assert_eq!(v, -1.0);
    }
}
