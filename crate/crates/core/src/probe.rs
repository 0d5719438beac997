//! Contour-integral checks of the singularity structure of the quantum
//! momentum function `chi(y) = 2 b1 y / (y^2 + 1) + P'(y) / P(y)`.

use num_complex::Complex;

use crate::error::{Result, ScarfError};
use crate::polynomial::{real_roots, PolySpec};
use crate::quadrature::integrate_breakpoints;
use crate::scalar::{half, lit, Scalar};
use crate::wavefunction::WavefunctionSpec;

pub const DEFAULT_SAMPLES: usize = 256;
/// Half-height of the rectangle used for the argument principle.
pub const RECTANGLE_HALF_HEIGHT: f64 = 0.5;
/// Minimum distance of Riccati grid points from a moving pole.
pub const POLE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ChiFunction<T> {
    pub poly: PolySpec<T>,
    pub b1: T,
    roots: Vec<T>,
}

impl<T: Scalar> ChiFunction<T> {
    pub fn new(poly: PolySpec<T>, b1: T) -> Result<Self> {
        let roots = real_roots(&poly)?;
        Ok(Self { poly, b1, roots })
    }

    pub fn from_spec(spec: &WavefunctionSpec<T>) -> Result<Self> {
        Self::new(spec.poly.clone(), spec.b1)
    }

    /// Real roots of `P_n`: the moving poles.
    pub fn roots(&self) -> &[T] {
        &self.roots
    }

    /// All poles: `+i`, `-i` and the moving poles.
    pub fn poles(&self) -> Vec<Complex<T>> {
        let mut p = vec![Complex::new(T::zero(), T::one()), Complex::new(T::zero(), -T::one())];
        p.extend(self.roots.iter().map(|&r| Complex::new(r, T::zero())));
        p
    }

    pub fn eval(&self, y: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        let (p, dp) = self.poly.eval_complex(y);
        y * (self.b1 + self.b1) / (y * y + one) + dp / p
    }

    pub fn eval_real(&self, y: T) -> T {
        let (p, dp, _) = self.poly.eval_derivs(y);
        (self.b1 + self.b1) * y / (y * y + T::one()) + dp / p
    }

    /// `(chi, chi')` on the real axis.
    pub fn eval_real_derivs(&self, y: T) -> (T, T) {
        let (p, dp, d2p) = self.poly.eval_derivs(y);
        let u = y * y + T::one();
        let two_b1 = self.b1 + self.b1;
        let chi = two_b1 * y / u + dp / p;
        let dchi = two_b1 * (T::one() - y * y) / (u * u) + (d2p * p - dp * dp) / (p * p);
        (chi, dchi)
    }

    /// `P'/P` part of `chi` only, for the argument principle.
    fn log_derivative(&self, y: Complex<T>) -> Complex<T> {
        let (p, dp) = self.poly.eval_complex(y);
        dp / p
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 64 || !samples.is_power_of_two() {
        return Err(ScarfError::Parameter(format!(
            "samples must be a power of two and at least 64, got {samples}"
        )));
    }
    Ok(())
}

/// `(1 / N) sum f(c + r e^(i theta_j)) r e^(i theta_j)`: the trapezoidal rule
/// for `(1 / 2 pi i)` times the circle integral.
fn circle_integral<T: Scalar, F: Fn(Complex<T>) -> Complex<T>>(
    f: F,
    center: Complex<T>,
    radius: T,
    samples: usize,
) -> Complex<T> {
    let n = T::from_usize_lossy(samples);
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..samples {
        let theta = T::TAU() * T::from_usize_lossy(j) / n;
        let w = Complex::from_polar(radius, theta);
        acc = acc + f(center + w) * w;
    }
    acc / n
}

/// Residue of `chi` at the pole enclosed by the circle of `radius` about
/// `center`.
pub fn contour_residue<T: Scalar>(
    chi: &ChiFunction<T>,
    center: Complex<T>,
    radius: T,
    samples: usize,
) -> Result<Complex<T>> {
    check_samples(samples)?;
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(ScarfError::Parameter(format!("radius must be positive, got {radius}")));
    }
    let guard = radius * lit(1.5);
    let mut near: Vec<T> = chi
        .poles()
        .iter()
        .map(|p| (p - center).norm())
        .filter(|&d| d < guard)
        .collect();
    near.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    if near.len() > 1 {
        return Err(ScarfError::Contour(format!(
            "{} poles lie within 1.5 x radius {radius} of the centre",
            near.len()
        )));
    }
    if let Some(&d) = near.first() {
        if d >= radius * lit(2.0 / 3.0) {
            return Err(ScarfError::Contour(format!(
                "pole at distance {d} is too close to the circle of radius {radius}"
            )));
        }
    }
    Ok(circle_integral(|y| chi.eval(y), center, radius, samples))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfinityExpansion<T> {
    /// Coefficient of `1/y`: the sum of all finite residues.
    pub d1: Complex<T>,
    /// Constant term: the mean of `chi` on the circle.
    pub d0: Complex<T>,
}

fn coefficient_tolerance<T: Scalar>() -> T {
    lit::<T>(1e-10).max(T::epsilon() * lit(1e4))
}

/// Leading coefficients of `chi = d0 + d1 / y + ...` from circles of radius
/// `R` and `2R`. Fails if the two disagree or `|d0|` exceeds `1e-10`.
pub fn residue_at_infinity<T: Scalar>(chi: &ChiFunction<T>, radius: T, samples: usize) -> Result<InfinityExpansion<T>> {
    check_samples(samples)?;
    let max_root = chi.roots.iter().fold(T::zero(), |m, r| m.max(r.abs()));
    let required = lit::<T>(10.0) * (T::one() + max_root);
    if !(radius >= required) || !radius.is_finite() {
        return Err(ScarfError::Parameter(format!(
            "radius {radius} must be at least 10 (1 + max|root|) = {required}"
        )));
    }
    let origin = Complex::new(T::zero(), T::zero());
    let at = |r: T| InfinityExpansion {
        d1: circle_integral(|y| chi.eval(y), origin, r, samples),
        d0: circle_integral(|y| chi.eval(y) / y, origin, r, samples),
    };
    let first = at(radius);
    let second = at(radius * lit(2.0));
    let tol = coefficient_tolerance::<T>();
    if (first.d1 - second.d1).norm() > tol * (T::one() + second.d1.norm()) {
        return Err(ScarfError::Numeric(format!(
            "d1 not converged: {} at R, {} at 2R",
            first.d1, second.d1
        )));
    }
    if second.d0.norm() > tol {
        return Err(ScarfError::Consistency(format!(
            "analytic part d0 = {} is not zero",
            second.d0
        )));
    }
    Ok(second)
}

fn rect_tolerance<T: Scalar>() -> T {
    lit::<T>(1e-6)
}

/// Number of zeros of `P_n` inside `[-Y, Y] x [-1/2, 1/2]` by the argument
/// principle, each side integrated with adaptive Gauss–Kronrod starting from
/// `samples / 15` panels.
pub fn count_moving_poles<T: Scalar>(chi: &ChiFunction<T>, half_width: T, samples: usize) -> Result<usize> {
    let max_root = chi.roots.iter().fold(T::zero(), |m, r| m.max(r.abs()));
    if !(half_width > lit::<T>(2.0) * (T::one() + max_root)) || !half_width.is_finite() {
        return Err(ScarfError::Parameter(format!(
            "rectangle half-width {half_width} must exceed 2 (1 + max|root|)"
        )));
    }
    let h = lit::<T>(RECTANGLE_HALF_HEIGHT);
    let y = half_width;
    let panels = (samples / 15).max(1);
    // counter-clockwise sides as (start, direction, length)
    let sides = [
        (Complex::new(-y, -h), Complex::new(T::one(), T::zero()), y + y),
        (Complex::new(y, -h), Complex::new(T::zero(), T::one()), h + h),
        (Complex::new(y, h), Complex::new(-T::one(), T::zero()), y + y),
        (Complex::new(-y, h), Complex::new(T::zero(), -T::one()), h + h),
    ];
    let mut total = Complex::new(T::zero(), T::zero());
    for (start, dir, len) in sides {
        let bp: Vec<T> = (0..=panels)
            .map(|k| len * T::from_usize_lossy(k) / T::from_usize_lossy(panels))
            .collect();
        let integrand = |t: T| chi.log_derivative(start + dir * t) * dir;
        let tol = T::epsilon().sqrt() * lit(1e-2);
        let re = integrate_breakpoints(&|t| integrand(t).re, &bp, tol, T::zero(), 4000)?;
        let im = integrate_breakpoints(&|t| integrand(t).im, &bp, tol, T::zero(), 4000)?;
        total = total + Complex::new(re.value, im.value);
    }
    // (1 / 2 pi i) times the loop integral
    let count = Complex::new(total.im, -total.re) / T::TAU();
    let nearest = count.re.round();
    if (count.re - nearest).abs() > rect_tolerance() || count.im.abs() > rect_tolerance() {
        return Err(ScarfError::Contour(format!(
            "argument principle gave non-integer {count}"
        )));
    }
    nearest
        .to_usize()
        .ok_or_else(|| ScarfError::Contour(format!("argument principle gave {count}")))
}

/// Largest `|chi^2 + chi' + (lambda^2 - 1)/(y^2 + 1)^2 + (1/4 - s^2)/(y^2 + 1)|`
/// over the grid, skipping points closer than `0.05` to a moving pole.
pub fn verify_riccati<T: Scalar>(chi: &ChiFunction<T>, grid: &[T], lambda: T, s: T) -> T {
    let margin = lit::<T>(POLE_MARGIN);
    let quarter = lit::<T>(0.25);
    grid.iter()
        .filter(|&&y| chi.roots.iter().all(|&r| (y - r).abs() >= margin))
        .map(|&y| {
            let (c, dc) = chi.eval_real_derivs(y);
            let u = y * y + T::one();
            (c * c + dc + (lambda * lambda - T::one()) / (u * u) + (quarter - s * s) / u).abs()
        })
        .fold(T::zero(), |m, r| m.max(r))
}

/// `max |chi(-y) + chi(y)| / max |chi|` over the grid.
pub fn parity_defect<T: Scalar>(chi: &ChiFunction<T>, grid: &[T]) -> T {
    let margin = lit::<T>(POLE_MARGIN);
    let mut defect = T::zero();
    let mut scale = T::zero();
    for &y in grid {
        if chi
            .roots
            .iter()
            .any(|&r| (y - r).abs() < margin || (y + r).abs() < margin)
        {
            continue;
        }
        let (a, b) = (chi.eval_real(y), chi.eval_real(-y));
        defect = defect.max((a + b).abs());
        scale = scale.max(a.abs()).max(b.abs());
    }
    if scale > T::zero() {
        defect / scale
    } else {
        T::zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueReport<T> {
    pub b1_measured: Complex<T>,
    pub b1_prime_measured: Complex<T>,
    pub d1_measured: Complex<T>,
    pub d0_measured: Complex<T>,
    /// Residues at each moving pole, in root order.
    pub moving_residues: Vec<Complex<T>>,
    pub moving_pole_count: usize,
    /// `|b1 + b1' + n - d1|` from the measured values.
    pub sum_rule_defect: T,
    pub riccati_residual: T,
    pub parity_defect: T,
}

/// `count` equally spaced points on `[-y, y]`.
pub fn uniform_grid<T: Scalar>(count: usize, y: T) -> Vec<T> {
    if count < 2 {
        return vec![T::zero(); count];
    }
    let step = (y + y) / T::from_usize_lossy(count - 1);
    (0..count).map(|k| -y + step * T::from_usize_lossy(k)).collect()
}

/// All probe measurements for one state.
pub fn residue_report<T: Scalar>(spec: &WavefunctionSpec<T>) -> Result<ResidueReport<T>> {
    let chi = ChiFunction::from_spec(spec)?;
    let i = Complex::new(T::zero(), T::one());
    let fixed_radius = half::<T>();
    let b1_measured = contour_residue(&chi, i, fixed_radius, DEFAULT_SAMPLES)?;
    let b1_prime_measured = contour_residue(&chi, -i, fixed_radius, DEFAULT_SAMPLES)?;

    let roots = chi.roots().to_vec();
    let mut moving_residues = Vec::with_capacity(roots.len());
    for (k, &r) in roots.iter().enumerate() {
        let mut gap = T::one();
        for (j, &q) in roots.iter().enumerate() {
            if j != k {
                gap = gap.min((q - r).abs());
            }
        }
        let radius = gap * lit(0.3);
        moving_residues.push(contour_residue(
            &chi,
            Complex::new(r, T::zero()),
            radius,
            DEFAULT_SAMPLES,
        )?);
    }

    let max_root = roots.iter().fold(T::zero(), |m, r| m.max(r.abs()));
    let infinity = residue_at_infinity(&chi, lit::<T>(10.0) * (T::one() + max_root), DEFAULT_SAMPLES)?;
    let moving_pole_count = count_moving_poles(&chi, lit::<T>(2.5) * (T::one() + max_root), DEFAULT_SAMPLES)?;
    let sum_rule_defect =
        (b1_measured + b1_prime_measured + T::from_usize_lossy(moving_pole_count) - infinity.d1).norm();

    let extent = lit::<T>(5.0).max(max_root * lit(1.2));
    let grid = uniform_grid(64, extent);
    Ok(ResidueReport {
        b1_measured,
        b1_prime_measured,
        d1_measured: infinity.d1,
        d0_measured: infinity.d0,
        moving_residues,
        moving_pole_count,
        sum_rule_defect,
        riccati_residual: verify_riccati(&chi, &grid, spec.lambda(), spec.params.s()),
        parity_defect: parity_defect(&chi, &grid),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::build_poly;
    use crate::potential::PotentialParams;
    use crate::spectrum::{bound_energy, lambda_for, Edge, SpectrumLine};
    use crate::wavefunction::build_wavefunction;

    fn bound(s: f64, n: usize) -> WavefunctionSpec<f64> {
        let p = PotentialParams::with_coupling(s).unwrap();
        build_wavefunction(&p, &bound_energy(&p, n).unwrap()).unwrap()
    }

    fn band_chi(s: f64, n: usize, edge: Edge) -> ChiFunction<f64> {
        let lambda = lambda_for(s, n, edge);
        ChiFunction::new(build_poly(s, n, edge).unwrap(), (1.0 - lambda) / 2.0).unwrap()
    }

    fn line_of(s: f64, n: usize, edge: Edge) -> SpectrumLine<f64> {
        let p = PotentialParams::with_coupling(s).unwrap();
        crate::spectrum::spectrum(&p, n)
            .unwrap()
            .into_iter()
            .find(|l| l.n == n && l.edge == edge)
            .unwrap()
    }

    #[test]
    fn fixed_pole_residues() {
        let chi = ChiFunction::from_spec(&bound(2.0, 0)).unwrap();
        let i = Complex::new(0.0, 1.0);
        let up = contour_residue(&chi, i, 0.3, 256).unwrap();
        let down = contour_residue(&chi, -i, 0.3, 256).unwrap();
        assert!((up - Complex::new(-0.75, 0.0)).norm() < 1e-12);
        assert!((down - Complex::new(-0.75, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn moving_pole_residue_is_one() {
        let chi = band_chi(0.4, 1, Edge::Lower);
        let r = contour_residue(&chi, Complex::new(0.0, 0.0), 0.2, 256).unwrap();
        assert!((r - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn contour_guards() {
        let chi = band_chi(0.4, 1, Edge::Lower);
        let i = Complex::new(0.0, 1.0);
        assert!(matches!(
            contour_residue(&chi, i * 0.5, 0.6, 256),
            Err(ScarfError::Contour(_))
        ));
        assert!(matches!(
            contour_residue(&chi, i, 0.3, 100),
            Err(ScarfError::Parameter(_))
        ));
    }

    #[test]
    fn infinity_coefficients() {
        let chi = ChiFunction::from_spec(&bound(2.0, 0)).unwrap();
        let inf = residue_at_infinity(&chi, 10.0, 256).unwrap();
        assert!((inf.d1 - Complex::new(-1.5, 0.0)).norm() < 1e-10);
        assert!(inf.d0.norm() < 1e-10);
        let chi = band_chi(0.4, 0, Edge::Lower);
        let inf = residue_at_infinity(&chi, 10.0, 256).unwrap();
        assert!((inf.d1 - Complex::new(0.9, 0.0)).norm() < 1e-10);
        let chi = band_chi(0.4, 1, Edge::Upper);
        let inf = residue_at_infinity(&chi, 20.0, 256).unwrap();
        assert!((inf.d1 - Complex::new(0.1, 0.0)).norm() < 1e-10);
        assert!(residue_at_infinity(&chi, 1.0, 256).is_err());
    }

    #[test]
    fn argument_principle() {
        assert_eq!(
            count_moving_poles(&ChiFunction::from_spec(&bound(2.0, 0)).unwrap(), 3.0, 256).unwrap(),
            0
        );
        let chi = band_chi(0.4, 2, Edge::Upper);
        assert_eq!(chi.roots().len(), 2);
        assert!((chi.roots()[1] - 0.5976).abs() < 1e-4);
        assert_eq!(count_moving_poles(&chi, 4.0, 256).unwrap(), 2);
        let chi = ChiFunction::from_spec(&bound(2.0, 3)).unwrap();
        let y = 2.5 * (1.0 + chi.roots().iter().fold(0.0f64, |m, r| m.max(r.abs())));
        assert_eq!(count_moving_poles(&chi, y, 256).unwrap(), 3);
    }

    #[test]
    fn riccati_residuals() {
        let grid = uniform_grid(64, 5.0);
        let chi = ChiFunction::from_spec(&bound(2.0, 0)).unwrap();
        assert!(verify_riccati(&chi, &grid, 2.5, 2.0) <= 1e-10);
        assert!(verify_riccati(&chi, &grid, 2.6, 2.0) >= 1e-3);
        let chi = band_chi(0.4, 1, Edge::Upper);
        assert!(verify_riccati(&chi, &grid, 1.9, 0.4) <= 1e-10);
    }

    #[test]
    fn report_sum_rule() {
        for n in 0..=5 {
            let spec = bound(2.0, n);
            let rep = residue_report(&spec).unwrap();
            assert_eq!(rep.moving_pole_count, n);
            assert!(rep.sum_rule_defect <= 1e-9, "n = {n}: {}", rep.sum_rule_defect);
            assert!((rep.b1_measured.re - spec.b1).abs() <= 1e-10);
            assert!(rep.parity_defect <= 1e-12);
            for r in &rep.moving_residues {
                assert!((r - Complex::new(1.0, 0.0)).norm() < 1e-10);
            }
        }
        let p = PotentialParams::with_coupling(0.4).unwrap();
        for edge in [Edge::Lower, Edge::Upper] {
            let spec = build_wavefunction(&p, &line_of(0.4, 3, edge)).unwrap();
            let rep = residue_report(&spec).unwrap();
            assert_eq!(rep.moving_pole_count, 3);
            assert!(rep.sum_rule_defect <= 1e-9);
            assert!(rep.riccati_residual <= 1e-10 * (1.0 + spec.lambda().powi(2)));
        }
    }
}
