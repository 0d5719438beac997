//! The periodic Scarf potential
//!
//! ```text
//! V(x) = -(1/4 - s^2) pi^2 / (2 m a^2 sin^2(pi x / a))
//! ```
//!
//! with hbar = 1 throughout. For `s > 1/2` the lattice points `x = k a` are
//! impenetrable walls and the spectrum is discrete; for `0 < s < 1/2` they are
//! integrable attractive dips and the spectrum has bands. At `s = 1/2` the
//! coupling vanishes.

use crate::error::{Result, ScarfError};
use crate::scalar::{half, lit, Scalar};

/// Lattice points closer than this fraction of the period are treated as singular.
pub const LATTICE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    BoundStates,
    Bands,
    FreeParticle,
    Unsupported,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::BoundStates => "bound_states",
            Regime::Bands => "bands",
            Regime::FreeParticle => "free_particle",
            Regime::Unsupported => "unsupported",
        }
    }
}

pub fn classify_regime<T: Scalar>(s: T) -> Regime {
    if !s.is_finite() || s <= T::zero() {
        Regime::Unsupported
    } else if s > half() {
        Regime::BoundStates
    } else if s < half() {
        Regime::Bands
    } else {
        Regime::FreeParticle
    }
}

/// Physical configuration of the potential. `v0` is the well-depth coefficient
/// `(1/4 - s^2) pi^2 / (2 m a^2)`, stored so the `V0` form of the bound-state
/// energy can be evaluated independently of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams<T> {
    s: T,
    a: T,
    m: T,
    v0: T,
}

impl<T: Scalar> PotentialParams<T> {
    pub fn new(s: T, a: T, m: T) -> Result<Self> {
        if classify_regime(s) == Regime::Unsupported {
            return Err(ScarfError::Parameter(format!(
                "coupling s must be finite and positive, got {s}"
            )));
        }
        for (name, v) in [("a", a), ("m", m)] {
            if !v.is_finite() || v <= T::zero() {
                return Err(ScarfError::Parameter(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        let v0 = (lit::<T>(0.25) - s * s) * T::PI() * T::PI() / (lit::<T>(2.0) * m * a * a);
        Ok(Self { s, a, m, v0 })
    }

    /// `a = m = 1`.
    pub fn with_coupling(s: T) -> Result<Self> {
        Self::new(s, T::one(), T::one())
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn v0(&self) -> T {
        self.v0
    }

    pub fn regime(&self) -> Regime {
        classify_regime(self.s)
    }

    /// `pi^2 / (2 m a^2)`: energy of unit `lambda`.
    pub fn energy_scale(&self) -> T {
        T::PI() * T::PI() / (lit::<T>(2.0) * self.m * self.a * self.a)
    }

    /// Recovers `s` from the stored `v0`: `sqrt(1/4 - 2 m v0 a^2 / pi^2)`.
    pub fn coupling_from_v0(&self) -> T {
        let pi2 = T::PI() * T::PI();
        (lit::<T>(0.25) - lit::<T>(2.0) * self.m * self.v0 * self.a * self.a / pi2).sqrt()
    }

    /// Reduces `x` into `[0, a)`.
    pub fn reduce(&self, x: T) -> T {
        reduce(x, self.a)
    }

    pub fn is_lattice_point(&self, x: T) -> bool {
        on_lattice(reduce(x, self.a), self.a)
    }

    pub fn evaluate(&self, x: T) -> Result<T> {
        evaluate_potential(self, x)
    }
}

fn reduce<T: Scalar>(x: T, a: T) -> T {
    let r = x % a;
    if r < T::zero() {
        r + a
    } else {
        r
    }
}

fn on_lattice<T: Scalar>(r: T, a: T) -> bool {
    let tol = lit::<T>(LATTICE_TOLERANCE) * a;
    r <= tol || a - r <= tol
}

/// `sin(pi x / a)` and `cos(pi x / a)` for a reduced `r`, folded about the cell
/// centre so both halves of the cell are computed from the same small angle.
pub(crate) fn cell_trig<T: Scalar>(r: T, a: T) -> (T, T) {
    if r > a * half() {
        let (s, c) = (T::PI() * (a - r) / a).sin_cos();
        (s, -c)
    } else {
        (T::PI() * r / a).sin_cos()
    }
}

pub fn evaluate_potential<T: Scalar>(params: &PotentialParams<T>, x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(ScarfError::Domain(format!("non-finite position {x}")));
    }
    let r = params.reduce(x);
    if on_lattice(r, params.a) {
        return Err(ScarfError::Singularity { x: x.as_f64() });
    }
    let (sin, _) = cell_trig(r, params.a);
    Ok(-params.v0 / (sin * sin))
}

/// `y = cot(pi x / a)`, strictly decreasing on every open cell.
pub fn cot_map<T: Scalar>(x: T, a: T) -> Result<T> {
    if !x.is_finite() || !a.is_finite() || a <= T::zero() {
        return Err(ScarfError::Domain(format!("cot_map({x}, {a})")));
    }
    let r = reduce(x, a);
    if on_lattice(r, a) {
        return Err(ScarfError::Singularity { x: x.as_f64() });
    }
    let (sin, cos) = cell_trig(r, a);
    Ok(cos / sin)
}

/// The unique `x` in `(k a, (k + 1) a)` with `cot(pi x / a) = y`.
pub fn inverse_cot_map<T: Scalar>(y: T, cell_index: i64, a: T) -> Result<T> {
    if !y.is_finite() || !a.is_finite() || a <= T::zero() {
        return Err(ScarfError::Domain(format!("inverse_cot_map({y}, {a})")));
    }
    // arccot with range (0, pi)
    let angle = T::one().atan2(y);
    let k = T::from_i64(cell_index).ok_or_else(|| ScarfError::Domain(format!("cell index {cell_index}")))?;
    Ok((k + angle / T::PI()) * a)
}
