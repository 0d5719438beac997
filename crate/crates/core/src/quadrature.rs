//! Globally adaptive 15-point Gauss–Kronrod quadrature.

#![allow(clippy::excessive_precision)]

use crate::error::{Result, ScarfError};
use crate::scalar::{lit, Scalar};

/// Kronrod abscissae on `[-1, 1]`, non-negative half, descending.
pub const GK15_NODES: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

pub const GK15_WEIGHTS: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Embedded 7-point Gauss weights, paired with the odd-indexed Kronrod nodes.
const G7_WEIGHTS: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Kronrod estimate and `|Kronrod - Gauss|` on `[lo, hi]`. Only interior nodes are
/// sampled, so integrable endpoint singularities are fine.
pub fn gk15<T: Scalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T) {
    let center = (lo + hi) * lit(0.5);
    let half = (hi - lo) * lit(0.5);
    let fc = f(center);
    let mut kronrod = fc * lit(GK15_WEIGHTS[7]);
    let mut gauss = fc * lit(G7_WEIGHTS[3]);
    for i in 0..7 {
        let dx = half * lit(GK15_NODES[i]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * lit(GK15_WEIGHTS[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * lit(G7_WEIGHTS[i / 2]);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

/// Integrates over consecutive breakpoints, bisecting the interval with the
/// largest error estimate until the total estimate is below
/// `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_breakpoints<T: Scalar, F: Fn(T) -> T>(
    f: &F,
    breakpoints: &[T],
    abs_tol: T,
    rel_tol: T,
    max_intervals: usize,
) -> Result<QuadratureResult<T>> {
    if breakpoints.len() < 2 {
        return Err(ScarfError::Parameter("need at least two breakpoints".into()));
    }
    let mut pieces: Vec<(T, T, T, T)> = breakpoints
        .windows(2)
        .map(|w| {
            let (v, e) = gk15(f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let value = pieces.iter().fold(T::zero(), |a, p| a + p.2);
        let error = pieces.iter().fold(T::zero(), |a, p| a + p.3);
        if !value.is_finite() {
            return Err(ScarfError::Numeric("non-finite integrand".into()));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(QuadratureResult {
                value,
                error,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= max_intervals {
            return Err(ScarfError::Numeric(format!(
                "quadrature did not converge: error estimate {} after {} intervals",
                error.as_f64(),
                pieces.len()
            )));
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|a, b| a.1 .3.partial_cmp(&b.1 .3).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            return Err(ScarfError::Numeric("interval bisection underflow".into()));
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// Breakpoints on `[lo, hi]` graded geometrically toward both ends,
/// `levels` halvings deep.
pub fn graded_breakpoints<T: Scalar>(lo: T, hi: T, levels: usize) -> Vec<T> {
    let half = (hi - lo) * lit(0.5);
    let mut left = Vec::with_capacity(levels + 1);
    let mut width = half;
    for _ in 0..levels {
        width = width * lit(0.5);
        left.push(lo + width);
    }
    left.reverse();
    let mut points = vec![lo];
    points.extend(left.iter().copied());
    points.push(lo + half);
    points.extend(left.iter().rev().map(|&p| hi - (p - lo)));
    points.push(hi);
    points
}

/// Integral over `[lo, hi]` of a function with integrable power-law behaviour at
/// both endpoints.
pub fn integrate_open<T: Scalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T, abs_tol: T) -> Result<QuadratureResult<T>> {
    let levels = (T::epsilon().log2().abs() * lit(0.8)).to_usize().unwrap_or(40);
    let bp = graded_breakpoints(lo, hi, levels);
    integrate_breakpoints(f, &bp, abs_tol, T::epsilon() * lit(16.0), 4000)
}
