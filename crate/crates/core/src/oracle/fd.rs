use crate::error::{Result, ScarfError};
use crate::potential::{PotentialParams, Regime};
use crate::scalar::{half, lit, Scalar};

pub const MIN_GRID_POINTS: usize = 200;

/// Lowest `k` eigenvalues of the three-point discretization on `(0, a)` with
/// `psi = 0` at both walls, using `n` intervals.
pub fn fd_eigenvalues<T: Scalar>(params: &PotentialParams<T>, n: usize, k: usize) -> Result<Vec<T>> {
    if params.regime() != Regime::BoundStates {
        return Err(ScarfError::Regime {
            expected: Regime::BoundStates,
            found: params.regime(),
        });
    }
    if n < MIN_GRID_POINTS {
        return Err(ScarfError::Parameter(format!(
            "grid_points must be at least {MIN_GRID_POINTS}, got {n}"
        )));
    }
    let interior = n - 1;
    if k == 0 || k > interior / 4 {
        return Err(ScarfError::Parameter(format!(
            "k_levels = {k} is out of range for {n} grid points"
        )));
    }
    let h = params.a() / T::from_usize_lossy(n);
    let kinetic = T::one() / (params.m() * h * h);
    let diag: Vec<T> = (1..n)
        .map(|i| params.evaluate(h * T::from_usize_lossy(i)).map(|v| kinetic + v))
        .collect::<Result<_>>()?;
    let off = -kinetic * half();
    Ok((0..k).map(|j| sturm_bisect(&diag, off, j)).collect())
}

/// Number of eigenvalues below `x` of the tridiagonal matrix with diagonal
/// `d` and constant off-diagonal `e`.
fn sturm_count<T: Scalar>(d: &[T], e: T, x: T) -> usize {
    let e2 = e * e;
    let floor = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = T::one();
    for (i, &di) in d.iter().enumerate() {
        q = if i == 0 { di - x } else { di - x - e2 / q };
        if q.abs() < floor {
            q = -floor;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// Eigenvalue of index `j` (ascending) by bisection on the Sturm count.
fn sturm_bisect<T: Scalar>(d: &[T], e: T, j: usize) -> T {
    let spread = e.abs() * lit(2.0);
    let mut lo = d.iter().fold(T::infinity(), |m, &v| m.min(v)) - spread;
    let mut hi = d.iter().fold(T::neg_infinity(), |m, &v| m.max(v)) + spread;
    for _ in 0..400 {
        let mid = (lo + hi) * half();
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) * half()
}

/// Lowest `k_levels` hard-wall eigenvalues, Richardson-extrapolated from grids
/// of `grid_points` and `2 grid_points` intervals as `(4 E_2N - E_N) / 3`.
pub fn fd_bound_spectrum<T: Scalar>(
    params: &PotentialParams<T>,
    grid_points: usize,
    k_levels: usize,
) -> Result<Vec<T>> {
    let coarse = fd_eigenvalues(params, grid_points, k_levels)?;
    let fine = fd_eigenvalues(params, 2 * grid_points, k_levels)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(&c, &f)| (lit::<T>(4.0) * f - c) / lit(3.0))
        .collect())
}
