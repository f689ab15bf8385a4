//! Composite trapezoidal rule on the square `[0, 2π] x [0, 2π]`.
//!
//! Both axes use `n` uniformly spaced samples including the end points, with
//! half weights at the ends. Results are normalized by `(2π)^2`, so a constant
//! integrand returns that constant.
//!
//! Summation order is fixed: each row (first axis) is summed sequentially,
//! then the row sums are folded sequentially in row order. The parallel path
//! only distributes rows across threads, so it is bit-identical to
//! [`torus_mean_sequential`].

use std::f64::consts::TAU;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn trapezoid_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i + 1 == n {
        0.5
    } else {
        1.0
    }
}

fn node(i: usize, n: usize) -> f64 {
    TAU * i as f64 / (n - 1) as f64
}

fn row_sum<F>(f: &F, i: usize, n: usize) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let theta = node(i, n);
    let mut sum = 0.0;
    for j in 0..n {
        sum += trapezoid_weight(j, n) * f(theta, node(j, n));
    }
    trapezoid_weight(i, n) * sum
}

fn normalize(total: f64, n: usize) -> f64 {
    let intervals = (n - 1) as f64;
    total / (intervals * intervals)
}

/// Mean of `f(θ, φ)` over the torus using `n >= 2` samples per axis.
pub fn torus_mean_sequential<F>(f: F, n: usize) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    assert!(n >= 2, "need at least two samples per axis");
    let total = (0..n).map(|i| row_sum(&f, i, n)).fold(0.0, |acc, s| acc + s);
    normalize(total, n)
}

/// Same as [`torus_mean_sequential`], with rows evaluated on the rayon pool.
#[cfg(feature = "parallel")]
pub fn torus_mean_parallel<F>(f: F, n: usize) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    assert!(n >= 2, "need at least two samples per axis");
    let rows: Vec<f64> = (0..n).into_par_iter().map(|i| row_sum(&f, i, n)).collect();
    normalize(rows.into_iter().fold(0.0, |acc, s| acc + s), n)
}

/// Torus mean on the default execution path for this build.
pub fn torus_mean<F>(f: F, n: usize) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        torus_mean_parallel(f, n)
    }
    #[cfg(not(feature = "parallel"))]
    {
        torus_mean_sequential(f, n)
    }
}

/// Sample count of the grid with twice as many intervals per axis.
pub fn refined_samples(n: usize) -> usize {
    2 * (n - 1) + 1
}

/// Ordered map over a slice, parallel when the `parallel` feature is on.
pub(crate) fn ordered_map<T, U, F>(items: &[T], f: F) -> Vec<U>
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
