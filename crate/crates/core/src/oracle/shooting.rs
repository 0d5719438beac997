use super::integrator::integrate;
use super::{ExponentChoice, Family, MatchKind, OracleMethod, OracleResult};
use crate::error::{Result, ScarfError};
use crate::potential::{PotentialParams, Regime};
use crate::scalar::{half, lit, Scalar};

/// Relative energy tolerance of the root solve.
pub const ENERGY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig<T> {
    /// Start offset from the lattice point.
    pub delta: T,
    pub exponent_choice: ExponentChoice,
    pub match_kind: MatchKind,
    /// Relative local error tolerance of the integrator.
    pub tolerance: T,
    pub max_steps: usize,
}

impl<T: Scalar> ShootingConfig<T> {
    /// `delta = 1e-4 a`, integrator tolerance `1e-13`.
    pub fn new(params: &PotentialParams<T>, exponent_choice: ExponentChoice, match_kind: MatchKind) -> Self {
        Self {
            delta: params.a() * lit(1e-4),
            exponent_choice,
            match_kind,
            tolerance: lit(1e-13),
            max_steps: 200_000,
        }
    }

    pub fn for_family(params: &PotentialParams<T>, family: Family) -> Self {
        Self::new(params, family.exponent, family.match_kind)
    }

    pub fn family(&self) -> Family {
        Family::new(self.exponent_choice, self.match_kind)
    }

    pub fn with_delta(mut self, delta: T) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    fn validate(&self, params: &PotentialParams<T>) -> Result<()> {
        if !(self.delta > T::zero()) || self.delta >= params.a() / lit(100.0) {
            return Err(ScarfError::Parameter(format!(
                "delta must lie in (0, a/100), got {}",
                self.delta
            )));
        }
        if !(self.tolerance > T::zero()) || !self.tolerance.is_finite() {
            return Err(ScarfError::Parameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_steps == 0 {
            return Err(ScarfError::Parameter("max_steps must be positive".into()));
        }
        match params.regime() {
            Regime::BoundStates if self.exponent_choice == ExponentChoice::Minus => Err(ScarfError::Regime {
                expected: Regime::Bands,
                found: Regime::BoundStates,
            }),
            Regime::Unsupported => Err(ScarfError::Parameter(format!(
                "unsupported coupling s = {}",
                params.s()
            ))),
            _ => Ok(()),
        }
    }

    fn exponent(&self, s: T) -> T {
        match self.exponent_choice {
            ExponentChoice::Plus => half::<T>() + s,
            ExponentChoice::Minus => half::<T>() - s,
        }
    }
}

/// Matching function at energy `e`: integrates the Schrödinger equation in `x`
/// from `delta` to `a/2` and returns `psi(a/2)` or `a psi'(a/2)`, divided by the
/// largest `|psi|` met on the way.
///
/// The start values are the first two terms of the Frobenius series about the
/// wall, `psi = delta^mu (1 + c2 delta^2)`, with the common factor `delta^mu`
/// dropped.
pub fn shoot<T: Scalar>(params: &PotentialParams<T>, e: T, cfg: &ShootingConfig<T>) -> Result<T> {
    cfg.validate(params)?;
    if !e.is_finite() {
        return Err(ScarfError::Domain(format!("non-finite energy {e}")));
    }
    let (a, m) = (params.a(), params.m());
    let two = lit::<T>(2.0);
    let mu = cfg.exponent(params.s());
    let d = cfg.delta;
    // V = mu(mu-1)/x^2 * (1/2m) + mu(mu-1) pi^2 / (6 m a^2) + O(x^2)
    let k = two * m * e - mu * (mu - T::one()) * T::PI() * T::PI() / (lit::<T>(3.0) * a * a);
    let c2 = -k / (lit::<T>(4.0) * mu + two);
    let psi0 = T::one() + c2 * d * d;
    let dpsi0 = mu / d + (mu + two) * c2 * d;

    let rhs = |x: T, y: [T; 2]| {
        let v = params.evaluate(x).unwrap_or_else(|_| T::nan());
        [y[1], two * m * (v - e) * y[0]]
    };
    let (end, stats) = integrate(rhs, d, [psi0, dpsi0], a * half(), cfg.tolerance, cfg.max_steps)?;
    let scale = stats.running_max[0];
    if !(scale > T::zero()) || !scale.is_finite() {
        return Err(ScarfError::Numeric("degenerate shooting trajectory".into()));
    }
    Ok(match cfg.match_kind {
        MatchKind::ValueAtMid => end[0] / scale,
        MatchKind::SlopeAtMid => a * end[1] / scale,
    })
}

/// Root of the matching function on `bracket` by bisection followed by
/// Illinois false-position, to relative energy tolerance `1e-10` or better.
/// The solve is repeated with `delta / 2`; the resulting shift is reported and
/// flags the result if it exceeds ten times the tolerance.
pub fn find_eigen<T: Scalar>(
    params: &PotentialParams<T>,
    bracket: (T, T),
    cfg: &ShootingConfig<T>,
) -> Result<OracleResult<T>> {
    let (lo, hi) = ordered(bracket)?;
    let f = |e: T| shoot(params, e, cfg);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    let (energy, final_bracket, residual) = solve(&f, lo, hi, flo, fhi)?;

    let tol = energy_tolerance::<T>();
    let half_cfg = cfg.with_delta(cfg.delta * half());
    let shifted = resolve_near(params, &half_cfg, energy, (lo, hi))?;
    let delta_sensitivity = (shifted - energy).abs();
    let flagged = delta_sensitivity > lit::<T>(10.0) * tol * energy.abs().max(T::min_positive_value());

    Ok(OracleResult {
        energy,
        bracket: final_bracket,
        residual,
        method: OracleMethod::Shooting,
        classification: None,
        delta_sensitivity,
        flagged,
        family: Some(cfg.family()),
    })
}

/// Energy tolerance used for the solve, floored for low-precision scalars.
pub(crate) fn energy_tolerance<T: Scalar>() -> T {
    lit::<T>(ENERGY_TOLERANCE).max(T::epsilon() * lit(64.0))
}

fn ordered<T: Scalar>(bracket: (T, T)) -> Result<(T, T)> {
    let (lo, hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    if !lo.is_finite() || !hi.is_finite() || lo == hi {
        return Err(ScarfError::Parameter(format!(
            "invalid bracket ({}, {})",
            bracket.0, bracket.1
        )));
    }
    Ok((lo, hi))
}

fn solve<T: Scalar, F: Fn(T) -> Result<T>>(f: &F, lo: T, hi: T, flo: T, fhi: T) -> Result<(T, (T, T), T)> {
    if flo == T::zero() {
        return Ok((lo, (lo, lo), T::zero()));
    }
    if fhi == T::zero() {
        return Ok((hi, (hi, hi), T::zero()));
    }
    if flo.signum() == fhi.signum() {
        return Err(ScarfError::Bracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
        });
    }
    let (mut lo, mut hi, mut flo, mut fhi) = (lo, hi, flo, fhi);
    // the final answer is carried well below the reported tolerance
    let target = lit::<T>(1e-3) * energy_tolerance::<T>();
    let width_ok = |lo: T, hi: T| hi - lo <= target * lo.abs().max(hi.abs()) || hi - lo <= T::epsilon() * lit(4.0);

    for _ in 0..200 {
        if hi - lo <= lit::<T>(1e-3) * lo.abs().max(hi.abs()) {
            break;
        }
        let mid = (lo + hi) * half();
        let fm = f(mid)?;
        if fm == T::zero() {
            return Ok((mid, (mid, mid), T::zero()));
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    let mut side = 0i8;
    for _ in 0..200 {
        if width_ok(lo, hi) {
            break;
        }
        let mut x = (lo * fhi - hi * flo) / (fhi - flo);
        if !(x > lo && x < hi) {
            x = (lo + hi) * half();
        }
        let fx = f(x)?;
        if fx == T::zero() {
            return Ok((x, (x, x), T::zero()));
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
            if side == -1 {
                fhi = fhi * half();
            }
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if side == 1 {
                flo = flo * half();
            }
            side = 1;
        }
    }
    let (energy, residual) = if flo.abs() <= fhi.abs() {
        (lo, flo.abs())
    } else {
        (hi, fhi.abs())
    };
    Ok((energy, (lo, hi), residual))
}

/// Re-solves near `energy`, widening a small bracket until the matching
/// function changes sign, within `limits`.
fn resolve_near<T: Scalar>(
    params: &PotentialParams<T>,
    cfg: &ShootingConfig<T>,
    energy: T,
    limits: (T, T),
) -> Result<T> {
    let f = |e: T| shoot(params, e, cfg);
    let mut w = energy.abs().max(T::one()) * lit(1e-7);
    for _ in 0..12 {
        let lo = (energy - w).max(limits.0);
        let hi = (energy + w).min(limits.1);
        let (flo, fhi) = (f(lo)?, f(hi)?);
        if flo == T::zero() || fhi == T::zero() || flo.signum() != fhi.signum() {
            return solve(&f, lo, hi, flo, fhi).map(|r| r.0);
        }
        if lo == limits.0 && hi == limits.1 {
            break;
        }
        w = w * lit(10.0);
    }
    Err(ScarfError::Numeric(format!(
        "root near {} lost when the start offset was halved",
        energy.as_f64()
    )))
}
