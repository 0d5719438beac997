//! Adaptive Dormand–Prince 5(4) for small first-order systems.

use crate::error::{Result, ScarfError};
use crate::scalar::{lit, Scalar};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (same as the last row of `A`).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct IntegrationStats<T> {
    pub steps: usize,
    pub rejected: usize,
    /// Largest magnitude reached by each component along the trajectory.
    pub running_max: [T; 2],
}

/// Integrates the second-order system `y = (u, u')`, `y' = f(x, y)`, from `x0`
/// to `x_end`. The error in `u` is measured against `rtol` times the largest
/// `|u|` reached so far; the error in `u'` against `rtol` times the larger of
/// its current size and `max |u| / (x_end - x0)`. The solution is thus resolved
/// relative to its own scale whatever its starting size.
pub fn integrate<T: Scalar, F>(
    f: F,
    x0: T,
    y0: [T; 2],
    x_end: T,
    rtol: T,
    max_steps: usize,
) -> Result<([T; 2], IntegrationStats<T>)>
where
    F: Fn(T, [T; 2]) -> [T; 2],
{
    let span = x_end - x0;
    if !(span > T::zero()) {
        return Err(ScarfError::Parameter("integration interval must be increasing".into()));
    }
    let mut x = x0;
    let mut y = y0;
    let mut running_max = [y0[0].abs(), y0[1].abs()];
    let mut h = span.min(x0.abs().max(span * lit(1e-6)) * lit(1e-2));
    let h_min = span * T::epsilon() * lit(16.0);
    let mut k = [[T::zero(); 2]; 7];
    k[0] = f(x, y);
    let mut steps = 0usize;
    let mut rejected = 0usize;

    while x < x_end {
        if steps + rejected >= max_steps {
            return Err(ScarfError::Numeric(format!(
                "integrator exceeded {max_steps} steps at x = {}",
                x.as_f64()
            )));
        }
        let last = x + h >= x_end;
        if last {
            h = x_end - x;
        }
        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = lit::<T>(A[stage][j]);
                if a != T::zero() {
                    ys[0] = ys[0] + h * a * kj[0];
                    ys[1] = ys[1] + h * a * kj[1];
                }
            }
            k[stage] = f(x + h * lit(C[stage]), ys);
        }
        let mut y5 = y;
        let mut err = [T::zero(); 2];
        for (stage, ks) in k.iter().enumerate() {
            let b5 = lit::<T>(B5[stage]);
            let db = b5 - lit::<T>(B4[stage]);
            for c in 0..2 {
                y5[c] = y5[c] + h * b5 * ks[c];
                err[c] = err[c] + h * db * ks[c];
            }
        }
        let scale0 = running_max[0].max(y5[0].abs());
        let scale1 = y[1].abs().max(y5[1].abs()).max(scale0 / span);
        let mut norm = T::zero();
        for (c, scale) in [scale0, scale1].into_iter().enumerate() {
            let scale = rtol * scale.max(T::min_positive_value());
            norm = norm.max((err[c] / scale).abs());
        }
        if !norm.is_finite() {
            return Err(ScarfError::Numeric(format!("non-finite state at x = {}", x.as_f64())));
        }
        if norm <= T::one() {
            x = if last { x_end } else { x + h };
            y = y5;
            // first-same-as-last: the seventh stage is f at the accepted point
            k[0] = k[6];
            for c in 0..2 {
                running_max[c] = running_max[c].max(y[c].abs());
            }
            steps += 1;
        } else {
            rejected += 1;
        }
        let factor = if norm == T::zero() {
            lit(5.0)
        } else {
            (lit::<T>(0.9) * norm.powf(lit(-0.2))).max(lit(0.2)).min(lit(5.0))
        };
        h = h * factor;
        if h < h_min && x < x_end {
            return Err(ScarfError::Numeric(format!(
                "step size underflow at x = {}",
                x.as_f64()
            )));
        }
    }
    Ok((
        y,
        IntegrationStats {
            steps,
            rejected,
            running_max,
        },
    ))
}
