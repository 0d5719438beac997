//! Closed-form eigenfunctions `psi(x) = N |sin(pi x / a)|^lambda P_n(cot(pi x / a))`.
//!
//! `(y^2 + 1)^(-lambda/2)` is evaluated as `sin^lambda` and `P_n(cot)` as
//! `sin^-n sum c_k cos^k sin^(n-k)`, so nothing overflows near the lattice.

use crate::error::{Result, ScarfError};
use crate::polynomial::{build_poly, PolySpec};
use crate::potential::{cell_trig, PotentialParams, Regime};
use crate::quadrature::integrate_open;
use crate::scalar::{half, lit, Scalar};
use crate::spectrum::{energy_of_lambda, lambda_for, SpectrumLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSpec<T> {
    pub params: PotentialParams<T>,
    pub line: SpectrumLine<T>,
    pub poly: PolySpec<T>,
    pub b1: T,
    pub norm: T,
    pub cell_index: i64,
}

/// `psi` at a point; `boundary` is set when the point is on the lattice, where
/// the value is reported as exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiValue<T> {
    pub value: T,
    pub boundary: bool,
}

pub fn build_wavefunction<T: Scalar>(
    params: &PotentialParams<T>,
    line: &SpectrumLine<T>,
) -> Result<WavefunctionSpec<T>> {
    if line.regime != params.regime() {
        return Err(ScarfError::Consistency(format!(
            "level belongs to regime {:?}, parameters give {:?}",
            line.regime,
            params.regime()
        )));
    }
    let lambda = lambda_for(params.s(), line.n, line.edge);
    let tol = lit::<T>(1e-12) * (T::one() + lambda);
    let energy = energy_of_lambda(params, lambda);
    if (lambda - line.lambda).abs() > tol || (energy - line.energy).abs() > tol * energy.max(T::one()) {
        return Err(ScarfError::Consistency(format!(
            "level (n = {}, lambda = {}, E = {}) does not belong to s = {}, a = {}, m = {}",
            line.n,
            line.lambda,
            line.energy,
            params.s(),
            params.a(),
            params.m()
        )));
    }
    let poly = build_poly(params.s(), line.n, line.edge)?;
    let mut spec = WavefunctionSpec {
        params: *params,
        line: *line,
        poly,
        b1: (T::one() - lambda) * half(),
        norm: T::one(),
        cell_index: 0,
    };
    let a = params.a();
    let integral = integrate_open(
        &|x: T| {
            let v = spec.raw(x);
            v * v
        },
        T::zero(),
        a,
        lit(1e-12),
    )?;
    if !(integral.value > T::zero()) {
        return Err(ScarfError::Numeric("wavefunction has zero norm".into()));
    }
    spec.norm = integral.value.sqrt().recip();
    Ok(spec)
}

impl<T: Scalar> WavefunctionSpec<T> {
    /// Unnormalized value at a non-lattice point.
    fn raw(&self, x: T) -> T {
        let a = self.params.a();
        let (sin, cos) = cell_trig(self.params.reduce(x), a);
        let n = self.poly.n;
        let mut acc = T::zero();
        let mut cos_pow = T::one();
        for k in 0..=n {
            let c = self.poly.coeffs[k];
            if c != T::zero() {
                acc = acc + c * cos_pow * sin.powi((n - k) as i32);
            }
            cos_pow = cos_pow * cos;
        }
        let exponent = self.line.lambda - T::from_usize_lossy(n);
        if exponent == T::zero() {
            acc
        } else {
            sin.powf(exponent) * acc
        }
    }

    pub fn lambda(&self) -> T {
        self.line.lambda
    }

    pub fn n(&self) -> usize {
        self.line.n
    }

    /// Position of the cell `[k a, (k + 1) a]` this state is sampled on.
    pub fn cell_bounds(&self) -> (T, T) {
        let a = self.params.a();
        let k = T::from_i64(self.cell_index).unwrap_or_else(T::zero);
        (k * a, (k + T::one()) * a)
    }

    /// Leading exponent of `psi ~ x^mu` at the lattice: `lambda - n`, which is
    /// `1/2 + s` for upper edges and bound states and `1/2 - s` for lower edges.
    pub fn predicted_exponent(&self) -> T {
        self.line.lambda - T::from_usize_lossy(self.line.n)
    }

    /// `(psi, psi', psi'')` at a non-lattice point.
    pub fn eval_derivs(&self, x: T) -> Result<(T, T, T)> {
        if !x.is_finite() {
            return Err(ScarfError::Domain(format!("non-finite position {x}")));
        }
        if self.params.is_lattice_point(x) {
            return Err(ScarfError::Singularity { x: x.as_f64() });
        }
        let a = self.params.a();
        let (sin, cos) = cell_trig(self.params.reduce(x), a);
        let y = cos / sin;
        let u = (sin * sin).recip();
        let lambda = self.line.lambda;
        let (p, d1, d2) = self.poly.eval_derivs(y);
        let w = sin.powf(lambda) * self.norm;
        let k = T::PI() / a;
        let two = lit::<T>(2.0);
        let psi = w * p;
        // d/dx = -(pi/a)(1 + y^2) d/dy
        let dpsi = -k * w * (u * d1 - lambda * y * p);
        let ddpsi = k
            * k
            * w
            * (u * u * d2 + two * (T::one() - lambda) * u * y * d1 + (lambda * lambda * y * y - lambda * u) * p);
        Ok((psi, dpsi, ddpsi))
    }

    /// Largest `|psi|` on a uniform grid of the cell.
    pub fn max_abs(&self, samples: usize) -> T {
        let a = self.params.a();
        let count = samples.max(3);
        (0..count)
            .map(|i| {
                let x = a * (T::from_usize_lossy(i) + half()) / T::from_usize_lossy(count);
                self.raw(x).abs() * self.norm
            })
            .fold(T::zero(), T::max)
    }
}

pub fn eval_psi<T: Scalar>(spec: &WavefunctionSpec<T>, x: T) -> PsiValue<T> {
    if !x.is_finite() || spec.params.is_lattice_point(x) {
        return PsiValue {
            value: T::zero(),
            boundary: true,
        };
    }
    PsiValue {
        value: spec.raw(x) * spec.norm,
        boundary: false,
    }
}

/// Convenience wrapper returning just the value.
pub fn psi<T: Scalar>(spec: &WavefunctionSpec<T>, x: T) -> T {
    eval_psi(spec, x).value
}

/// Sign changes of `psi` on a uniform open grid of the cell, each refined by
/// bisection. Samples within `1e-13 max|psi|` of zero are skipped; one lying
/// between samples of the same sign is reported as ambiguous.
pub fn node_positions<T: Scalar>(spec: &WavefunctionSpec<T>, samples: usize) -> Result<Vec<T>> {
    if samples < 64 {
        return Err(ScarfError::Parameter(format!(
            "need at least 64 samples, got {samples}"
        )));
    }
    let (lo, _) = spec.cell_bounds();
    let a = spec.params.a();
    let grid: Vec<(T, T)> = (0..samples)
        .map(|i| {
            let x = lo + a * (T::from_usize_lossy(i) + half()) / T::from_usize_lossy(samples);
            (x, psi(spec, x))
        })
        .collect();
    let max = grid.iter().fold(T::zero(), |m, p| m.max(p.1.abs()));
    let threshold = lit::<T>(1e-13) * max;

    let mut nodes = Vec::new();
    let mut last: Option<(T, T)> = None;
    let mut skipped: Option<T> = None;
    for &(x, v) in &grid {
        if v.abs() <= threshold {
            if last.is_some() {
                skipped = Some(x);
            }
            continue;
        }
        if let Some((xp, vp)) = last {
            if (vp > T::zero()) != (v > T::zero()) {
                nodes.push(bisect_node(spec, xp, x));
            } else if let Some(xs) = skipped {
                return Err(ScarfError::Resolution { x: xs.as_f64() });
            }
        }
        skipped = None;
        last = Some((x, v));
    }
    Ok(nodes)
}

fn bisect_node<T: Scalar>(spec: &WavefunctionSpec<T>, mut lo: T, mut hi: T) -> T {
    let positive_lo = psi(spec, lo) > T::zero();
    for _ in 0..200 {
        let mid = (lo + hi) * half();
        if mid <= lo || mid >= hi {
            break;
        }
        let v = psi(spec, mid);
        if v == T::zero() {
            return mid;
        }
        if (v > T::zero()) == positive_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * half()
}

pub fn count_nodes<T: Scalar>(spec: &WavefunctionSpec<T>, samples: usize) -> Result<usize> {
    Ok(node_positions(spec, samples)?.len())
}

/// Least-squares slope of `ln|psi|` against `ln x` on `[1e-5 a, 1e-3 a]`
/// (measured from the left lattice point of the cell). The lower end of the
/// window is raised if `psi` underflows there.
pub fn boundary_exponent<T: Scalar>(spec: &WavefunctionSpec<T>) -> Result<T> {
    let a = spec.params.a();
    let (cell_lo, _) = spec.cell_bounds();
    let hi = lit::<T>(1e-3);
    let mut lo = lit::<T>(1e-5);
    let points = 32usize;
    while lo < hi * lit(0.5) {
        let ln_lo = lo.ln();
        let ln_hi = hi.ln();
        let mut samples = Vec::with_capacity(points);
        for i in 0..points {
            let t = ln_lo + (ln_hi - ln_lo) * T::from_usize_lossy(i) / T::from_usize_lossy(points - 1);
            let x = t.exp() * a;
            let v = psi(spec, cell_lo + x).abs();
            if !(v > T::zero()) || !v.ln().is_finite() {
                break;
            }
            samples.push((t, v.ln()));
        }
        if samples.len() == points {
            return Ok(least_squares_slope(&samples));
        }
        lo = lo * lit(10.0);
    }
    Err(ScarfError::Numeric(
        "wavefunction underflows across the exponent fit window".into(),
    ))
}

fn least_squares_slope<T: Scalar>(points: &[(T, T)]) -> T {
    let n = T::from_usize_lossy(points.len());
    let mx = points.iter().fold(T::zero(), |s, p| s + p.0) / n;
    let my = points.iter().fold(T::zero(), |s, p| s + p.1) / n;
    let (num, den) = points.iter().fold((T::zero(), T::zero()), |(num, den), p| {
        let dx = p.0 - mx;
        (num + dx * (p.1 - my), den + dx * dx)
    });
    num / den
}

/// Parity about the cell centre, fixed by the degree of `P_n`.
pub fn parity<T: Scalar>(spec: &WavefunctionSpec<T>) -> Parity {
    if spec.line.n.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `max |psi(a/2 + u) -+ psi(a/2 - u)| / max |psi|` on `samples` offsets, with
/// the sign chosen by the claimed parity.
pub fn parity_defect<T: Scalar>(spec: &WavefunctionSpec<T>, claimed: Parity, samples: usize) -> T {
    let a = spec.params.a();
    let (lo, _) = spec.cell_bounds();
    let mid = lo + a * half();
    let max = spec.max_abs(2001);
    let sign = match claimed {
        Parity::Even => -T::one(),
        Parity::Odd => T::one(),
    };
    (1..=samples)
        .map(|i| {
            let u = a * half() * T::from_usize_lossy(i) / T::from_usize_lossy(samples + 1);
            (psi(spec, mid + u) + sign * psi(spec, mid - u)).abs()
        })
        .fold(T::zero(), T::max)
        / max
}

/// Largest `|-psi''/(2m) + V psi - E psi|` on `points` interior points kept
/// `margin * a` away from the lattice, and the reference scale `|E| max|psi|`.
pub fn schrodinger_residual<T: Scalar>(spec: &WavefunctionSpec<T>, points: usize, margin: T) -> Result<(T, T)> {
    let a = spec.params.a();
    let (lo, _) = spec.cell_bounds();
    let m = spec.params.m();
    let e = spec.line.energy;
    let start = lo + margin * a;
    let span = a * (T::one() - lit::<T>(2.0) * margin);
    let mut worst = T::zero();
    for i in 0..points {
        let x = start + span * T::from_usize_lossy(i) / T::from_usize_lossy(points.max(2) - 1);
        let (p, _, pp) = spec.eval_derivs(x)?;
        let v = spec.params.evaluate(x)?;
        let r = -pp / (lit::<T>(2.0) * m) + (v - e) * p;
        worst = worst.max(r.abs());
    }
    Ok((worst, e.abs() * spec.max_abs(2001)))
}

/// Normalized samples `(x, V(x), psi, psi^2)` on `count` points of the cell,
/// offset from both lattice points by `a / (10 count)`.
pub fn sample_cell<T: Scalar>(spec: &WavefunctionSpec<T>, count: usize) -> Result<Vec<[T; 4]>> {
    if count < 2 {
        return Err(ScarfError::Parameter("need at least two samples".into()));
    }
    let a = spec.params.a();
    let (lo, _) = spec.cell_bounds();
    let offset = a / (lit::<T>(10.0) * T::from_usize_lossy(count));
    let span = a - lit::<T>(2.0) * offset;
    (0..count)
        .map(|i| {
            let x = lo + offset + span * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1);
            let v = spec.params.evaluate(x)?;
            let p = psi(spec, x);
            Ok([x, v, p, p * p])
        })
        .collect()
}

/// Whether the state is required to vanish at the lattice (hard walls).
pub fn has_hard_walls<T: Scalar>(spec: &WavefunctionSpec<T>) -> bool {
    spec.params.regime() == Regime::BoundStates
}
