//! Polynomial part `P_n(y)` of the eigenfunctions.
//!
//! Substituting `psi = (y^2 + 1)^(b1 - 1/2) P_n(y)` with `b1 = (1 - lambda)/2`
//! into the Riccati equation leaves
//!
//! ```text
//! (y^2 + 1) P'' + (1 - 2n -+ 2s) y P' + n (n +- 2s) P = 0
//! ```
//!
//! (upper signs: upper band edges and bound states). Its polynomial solution is
//! built from the two-term coefficient recurrence, downward from a monic
//! leading term. With `y = i t` the same equation is the Jacobi equation with
//! `alpha = beta = -n -+ s - 1/2`; [`jacobi_eval`] gives that route for
//! cross-checking.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Result, ScarfError};
use crate::potential::{classify_regime, Regime};
use crate::scalar::{lit, Scalar};
use crate::spectrum::{lambda_for, Edge};

/// Monic polynomial of definite parity, coefficients in ascending powers of `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySpec<T> {
    pub n: usize,
    pub coeffs: Vec<T>,
    pub lambda: T,
    pub s: T,
    pub edge: Edge,
}

fn check_edge<T: Scalar>(s: T, edge: Edge) -> Result<()> {
    let regime = classify_regime(s);
    let ok = match edge {
        Edge::NotApplicable => regime == Regime::BoundStates,
        Edge::Upper => matches!(regime, Regime::Bands | Regime::FreeParticle),
        Edge::Lower => matches!(regime, Regime::Bands | Regime::FreeParticle),
    };
    if ok {
        Ok(())
    } else {
        Err(ScarfError::Consistency(format!(
            "edge {edge:?} is not available in regime {regime:?} (s = {s})"
        )))
    }
}

pub fn build_poly<T: Scalar>(s: T, n: usize, edge: Edge) -> Result<PolySpec<T>> {
    check_edge(s, edge)?;
    let lambda = lambda_for(s, n, edge);
    let nf = T::from_usize_lossy(n);
    // second root of the indicial quadratic k^2 + (1 - 2 lambda) k + C
    let other_root = nf + lit::<T>(2.0) * edge.sign::<T>() * s;

    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut k = n;
    while k >= 2 {
        k -= 2;
        let kf = T::from_usize_lossy(k);
        let pivot = (kf - nf) * (kf - other_root);
        if pivot.abs() <= lit::<T>(1e-12) * (T::one() + kf * kf) {
            return Err(ScarfError::Construction(format!(
                "zero pivot at k = {k} (n = {n}, s = {s}, edge {edge:?})"
            )));
        }
        let kp1 = kf + T::one();
        let kp2 = kf + lit(2.0);
        coeffs[k] = -kp2 * kp1 * coeffs[k + 2] / pivot;
    }
    Ok(PolySpec {
        n,
        coeffs,
        lambda,
        s,
        edge,
    })
}

impl<T: Scalar> PolySpec<T> {
    pub fn eval(&self, y: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * y + c)
    }

    /// `(P, P', P'')` at a real point.
    pub fn eval_derivs(&self, y: T) -> (T, T, T) {
        let (mut p, mut d1, mut d2) = (T::zero(), T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * y + d1 + d1;
            d1 = d1 * y + p;
            p = p * y + c;
        }
        (p, d1, d2)
    }

    /// `(P, P')` at a complex point.
    pub fn eval_complex(&self, y: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = Complex::new(T::zero(), T::zero());
        let mut d = p;
        for &c in self.coeffs.iter().rev() {
            d = d * y + p;
            p = p * y + c;
        }
        (p, d)
    }

    /// Left side of the polynomial ODE and the largest of its three terms.
    pub fn ode_residual(&self, y: T) -> (T, T) {
        let (p, d1, d2) = self.eval_derivs(y);
        let nf = T::from_usize_lossy(self.n);
        let sigma = self.edge.sign::<T>();
        let two = lit::<T>(2.0);
        let t2 = (y * y + T::one()) * d2;
        let t1 = (T::one() - two * nf - sigma * two * self.s) * y * d1;
        let t0 = nf * (nf + sigma * two * self.s) * p;
        (t2 + t1 + t0, t2.abs().max(t1.abs()).max(t0.abs()))
    }

    pub fn degree(&self) -> usize {
        self.n
    }
}

/// Jacobi parameters `alpha = beta` of the polynomial part.
pub fn jacobi_parameters<T: Scalar>(s: T, n: usize, regime: Regime, edge: Edge) -> Result<(T, T)> {
    let sign = match (regime, edge) {
        (Regime::BoundStates, Edge::NotApplicable) | (Regime::Bands | Regime::FreeParticle, Edge::Upper) => T::one(),
        (Regime::Bands | Regime::FreeParticle, Edge::Lower) => -T::one(),
        _ => {
            return Err(ScarfError::Consistency(format!(
                "no level with edge {edge:?} in regime {regime:?}"
            )))
        }
    };
    let nu = -T::from_usize_lossy(n) - sign * s - lit(0.5);
    Ok((nu, nu))
}

/// Jacobi polynomial `P_n^(alpha, beta)(t)` by the three-term recurrence in the
/// degree. Fails when a recurrence denominator vanishes, which happens for
/// some negative integer combinations of `alpha + beta`.
pub fn jacobi_eval<T: Scalar>(n: usize, alpha: T, beta: T, t: Complex<T>) -> Result<Complex<T>> {
    let one = T::one();
    let two = lit::<T>(2.0);
    let mut prev = Complex::new(one, T::zero());
    if n == 0 {
        return Ok(prev);
    }
    let ab = alpha + beta;
    let mut cur = (t - one) * ((ab + two) / two) + (alpha + one);
    for k in 2..=n {
        let kf = T::from_usize_lossy(k);
        let c2k = two * kf + ab;
        let denom = two * kf * (kf + ab) * (c2k - two);
        if denom.abs() <= T::tiny() * (one + c2k * c2k * kf) {
            return Err(ScarfError::Construction(format!(
                "Jacobi recurrence degenerates at degree {k} (alpha = {alpha}, beta = {beta})"
            )));
        }
        let a1 = (c2k - one) * (c2k * (c2k - two));
        let a0 = (c2k - one) * (alpha * alpha - beta * beta);
        let am = two * (kf + alpha - one) * (kf + beta - one) * c2k;
        let next = (cur * (t * a1 + a0) - prev * am) / denom;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `i^n P_n^(nu, nu)(-i y)`: real for real `y`, proportional to the monic
/// polynomial part.
pub fn phase_stripped_jacobi<T: Scalar>(n: usize, nu: T, y: T) -> Result<Complex<T>> {
    let t = Complex::new(T::zero(), -y);
    let phase = Complex::new(T::zero(), T::one()).powu(n as u32);
    Ok(jacobi_eval(n, nu, nu, t)? * phase)
}

/// Largest spread of `i^n P^(nu,nu)_n(-iy) / P_n(y)` over the sample points,
/// relative to its mean, together with the largest relative imaginary part.
pub fn jacobi_proportionality<T: Scalar>(poly: &PolySpec<T>, points: &[T]) -> Result<(T, T)> {
    let regime = classify_regime(poly.s);
    let (nu, _) = jacobi_parameters(poly.s, poly.n, regime, poly.edge)?;
    let mut ratios = Vec::with_capacity(points.len());
    let mut imag = T::zero();
    for &y in points {
        let j = phase_stripped_jacobi(poly.n, nu, y)?;
        let p = poly.eval(y);
        imag = imag.max(j.im.abs() / j.norm().max(T::min_positive_value()));
        // ratios are meaningless at the shared roots
        let size = (T::one() + y.abs()).powi(poly.n as i32);
        if p.abs() > lit::<T>(1e-6) * size {
            ratios.push(j.re / p);
        }
    }
    if ratios.is_empty() {
        return Ok((T::zero(), imag));
    }
    let mean = ratios.iter().fold(T::zero(), |a, &r| a + r) / T::from_usize_lossy(ratios.len());
    if mean.abs() <= T::min_positive_value() || !mean.is_finite() {
        return Err(ScarfError::Construction("Jacobi route vanishes identically".into()));
    }
    let spread = ratios.iter().fold(T::zero(), |a, &r| a.max(((r - mean) / mean).abs()));
    Ok((spread, imag))
}

/// Real roots of the polynomial, ascending, from the eigenvalues of its
/// companion matrix followed by Newton polishing.
pub fn real_roots<T: Scalar>(poly: &PolySpec<T>) -> Result<Vec<T>> {
    let n = poly.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = poly.coeffs[n].as_f64();
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -poly.coeffs[i].as_f64() / lead;
    }
    let eigen = companion.complex_eigenvalues();
    let scale = poly.coeffs.iter().fold(T::zero(), |a, &c| a.max(c.abs()));

    let mut roots = Vec::with_capacity(n);
    for z in eigen.iter() {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        let mut y = T::lit(z.re);
        for _ in 0..4 {
            let (p, d, _) = poly.eval_derivs(y);
            if d == T::zero() {
                break;
            }
            let step = p / d;
            y = y - step;
            if step.abs() <= T::epsilon() * (T::one() + y.abs()) {
                break;
            }
        }
        let p = poly.eval(y);
        let magnitude = y.abs().max(T::one()).powi(n as i32) * scale;
        let tol = lit::<T>(1e-8).max(T::epsilon() * lit(1e3));
        if !y.is_finite() || p.abs() > tol * magnitude {
            return Err(ScarfError::Numeric(format!(
                "root polish did not converge near {}: residual {}",
                z.re,
                p.as_f64()
            )));
        }
        roots.push(y);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(roots)
}

/// `count` Chebyshev points of the first kind on `[lo, hi]`.
pub fn chebyshev_points<T: Scalar>(count: usize, lo: T, hi: T) -> Vec<T> {
    let mid = (lo + hi) * lit(0.5);
    let rad = (hi - lo) * lit(0.5);
    (0..count)
        .map(|j| {
            let theta = T::PI() * (T::from_usize_lossy(j) + lit(0.5)) / T::from_usize_lossy(count);
            mid + rad * theta.cos()
        })
        .collect()
}
