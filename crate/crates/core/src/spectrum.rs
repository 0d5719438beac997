//! Residue algebra of the quantum momentum function and the closed-form levels.
//!
//! After `y = cot(pi x / a)` the momentum function `chi(y)` is rational with
//! fixed poles at `y = +-i` (residues `b1`, `b1'`), `n` unit-residue poles on
//! the real axis, and a residue `d1` at infinity. The residues must sum to zero:
//! `b1 + b1' + n = d1`. Parity forces `b1 = b1'` and the analytic part to
//! vanish; boundedness of `psi` at the lattice selects the admissible `d1`.

use crate::error::{Result, ScarfError};
use crate::potential::{classify_regime, PotentialParams, Regime};
use crate::scalar::{half, lit, Scalar};

/// Integrality tolerance for the polynomial degree implied by a residue set.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-9;

/// The constant analytic part `C` of `chi` (and its leading Laurent coefficient
/// `d0` at infinity). Parity forces it to zero.
pub const ANALYTIC_PART: f64 = 0.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Edge {
    Lower,
    Upper,
    NotApplicable,
}

impl Edge {
    pub fn label(self) -> Option<&'static str> {
        match self {
            Edge::Lower => Some("lower"),
            Edge::Upper => Some("upper"),
            Edge::NotApplicable => None,
        }
    }

    /// `+1` for states whose boundary exponent is `1/2 + s`, `-1` for `1/2 - s`.
    pub(crate) fn sign<T: Scalar>(self) -> T {
        match self {
            Edge::Lower => -T::one(),
            Edge::Upper | Edge::NotApplicable => T::one(),
        }
    }
}

/// One row of the residue enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueSet<T> {
    pub set_id: u8,
    pub b1: T,
    pub b1_prime: T,
    pub d1: T,
    /// Degree implied by the sum rule, `d1 - b1 - b1'`.
    pub n_value: T,
    pub valid: bool,
    pub rejection_reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLine<T> {
    pub n: usize,
    pub regime: Regime,
    pub edge: Edge,
    pub lambda: T,
    pub energy: T,
    pub nu1: T,
    pub nu2: T,
    pub b1: T,
    pub d1: T,
}

impl<T: Scalar> SpectrumLine<T> {
    fn new(params: &PotentialParams<T>, n: usize, regime: Regime, edge: Edge, lambda: T) -> Self {
        let nf = T::from_usize_lossy(n);
        let b1 = (T::one() - lambda) * half();
        let (nu, _) = jacobi_nu(params.s(), n, edge);
        Self {
            n,
            regime,
            edge,
            lambda,
            energy: energy_of_lambda(params, lambda),
            nu1: nu,
            nu2: nu,
            b1,
            d1: lit::<T>(2.0) * b1 + nf,
        }
    }
}

fn jacobi_nu<T: Scalar>(s: T, n: usize, edge: Edge) -> (T, T) {
    let nu = -T::from_usize_lossy(n) - edge.sign::<T>() * s - half::<T>();
    (nu, nu)
}

/// `lambda` of level `n` on the given edge: `n + 1/2 + s` for upper edges and
/// bound states, `n + 1/2 - s` for lower edges.
pub fn lambda_for<T: Scalar>(s: T, n: usize, edge: Edge) -> T {
    T::from_usize_lossy(n) + half::<T>() + edge.sign::<T>() * s
}

pub fn energy_of_lambda<T: Scalar>(params: &PotentialParams<T>, lambda: T) -> T {
    params.energy_scale() * lambda * lambda
}

/// Candidate residues of `chi` at `y = i` (and, identically, at `y = -i`):
/// `[(1 - lambda)/2, (1 + lambda)/2]`.
pub fn fixed_pole_residue_candidates<T: Scalar>(lambda: T) -> Result<[T; 2]> {
    if !lambda.is_finite() || lambda <= T::zero() {
        return Err(ScarfError::Domain(format!(
            "lambda must be positive and real, got {lambda}"
        )));
    }
    Ok([(T::one() - lambda) * half(), (T::one() + lambda) * half()])
}

/// Roots of `d1^2 - d1 + (1/4 - s^2) = 0`: `[(1 - 2s)/2, (1 + 2s)/2]`.
pub fn infinity_residue_candidates<T: Scalar>(s: T) -> [T; 2] {
    [half::<T>() - s, half::<T>() + s]
}

/// Residues at infinity compatible with a wavefunction that stays finite at the
/// lattice points.
pub fn admissible_d1<T: Scalar>(s: T) -> Result<Vec<T>> {
    let [minus, plus] = infinity_residue_candidates(s);
    match classify_regime(s) {
        Regime::Bands => Ok(vec![minus, plus]),
        Regime::BoundStates => Ok(vec![minus]),
        Regime::FreeParticle => Err(ScarfError::Degenerate(
            "s = 1/2: residue candidates collapse to {0, 1}; use the free-particle path".into(),
        )),
        Regime::Unsupported => Err(ScarfError::Parameter(format!("unsupported coupling s = {s}"))),
    }
}

/// Enumerates every `(b1 = b1', d1)` combination and marks the ones whose
/// implied degree is a non-negative integer. Set ids follow the band-regime
/// table: 1 and 2 use `b1 = (1 - lambda)/2`, 3 and 4 use `(1 + lambda)/2`;
/// odd ids pair with `d1 = 1/2 - s`, even ids with `1/2 + s`. In the bound
/// regime only ids 1 and 3 exist.
pub fn enumerate_residue_sets<T: Scalar>(s: T, lambda: T) -> Result<Vec<ResidueSet<T>>> {
    let b1_candidates = fixed_pole_residue_candidates(lambda)?;
    let admissible = admissible_d1(s)?;
    let [d1_minus, _] = infinity_residue_candidates(s);
    let tol = lit::<T>(INTEGRALITY_TOLERANCE).max(T::tiny() * (T::one() + lambda + s));

    let mut sets = Vec::with_capacity(4);
    for (bi, &b1) in b1_candidates.iter().enumerate() {
        for &d1 in &admissible {
            let set_id = 1 + 2 * bi as u8 + u8::from(d1 != d1_minus);
            let n_value = d1 - b1 - b1;
            let nearest = n_value.round();
            let rejection_reason = if n_value < -tol {
                Some(format!("negative degree n = {n_value}"))
            } else if (n_value - nearest).abs() > tol {
                Some(format!("non-integer degree n = {n_value}"))
            } else {
                None
            };
            sets.push(ResidueSet {
                set_id,
                b1,
                b1_prime: b1,
                d1,
                n_value,
                valid: rejection_reason.is_none(),
                rejection_reason,
            });
        }
    }
    sets.sort_by_key(|r| r.set_id);
    Ok(sets)
}

fn require_regime<T: Scalar>(params: &PotentialParams<T>, expected: Regime) -> Result<()> {
    let found = params.regime();
    if found == expected {
        Ok(())
    } else {
        Err(ScarfError::Regime { expected, found })
    }
}

/// Lower and upper edges of band `n`: `E = (pi^2 / 2 m a^2)(n + 1/2 -+ s)^2`.
pub fn band_edge_energies<T: Scalar>(
    params: &PotentialParams<T>,
    n: usize,
) -> Result<(SpectrumLine<T>, SpectrumLine<T>)> {
    require_regime(params, Regime::Bands)?;
    Ok(edges_unchecked(params, n, Regime::Bands))
}

fn edges_unchecked<T: Scalar>(
    params: &PotentialParams<T>,
    n: usize,
    regime: Regime,
) -> (SpectrumLine<T>, SpectrumLine<T>) {
    let s = params.s();
    let lower = SpectrumLine::new(params, n, regime, Edge::Lower, lambda_for(s, n, Edge::Lower));
    let upper = SpectrumLine::new(params, n, regime, Edge::Upper, lambda_for(s, n, Edge::Upper));
    (lower, upper)
}

/// Band edges of the `s = 1/2` limit, where the potential vanishes and the
/// edges fold to `(pi^2 / 2 m a^2){n^2, (n + 1)^2}`. The lowest edge sits at
/// zero energy.
pub fn free_particle_edges<T: Scalar>(
    params: &PotentialParams<T>,
    n: usize,
) -> Result<(SpectrumLine<T>, SpectrumLine<T>)> {
    require_regime(params, Regime::FreeParticle)?;
    Ok(edges_unchecked(params, n, Regime::FreeParticle))
}

/// Level `n` of the discrete spectrum, `lambda = n + 1/2 + s`.
pub fn bound_energy<T: Scalar>(params: &PotentialParams<T>, n: usize) -> Result<SpectrumLine<T>> {
    require_regime(params, Regime::BoundStates)?;
    let lambda = lambda_for(params.s(), n, Edge::NotApplicable);
    Ok(SpectrumLine::new(
        params,
        n,
        Regime::BoundStates,
        Edge::NotApplicable,
        lambda,
    ))
}

/// The bound-state energy written through the well depth `V0` rather than `s`.
pub fn bound_energy_from_v0<T: Scalar>(params: &PotentialParams<T>, n: usize) -> T {
    let lambda = T::from_usize_lossy(n) + half::<T>() + params.coupling_from_v0();
    params.energy_scale() * lambda * lambda
}

/// `lambda = sqrt(2 m E a^2) / pi`.
pub fn lambda_of_energy<T: Scalar>(params: &PotentialParams<T>, energy: T) -> Result<T> {
    if !energy.is_finite() || energy <= T::zero() {
        return Err(ScarfError::Domain(format!(
            "energy must be positive (lambda would be imaginary), got {energy}"
        )));
    }
    Ok((lit::<T>(2.0) * params.m() * energy).sqrt() * params.a() / T::PI())
}

/// All closed-form levels with index `0..=n_max`, ordered by energy. Bands and
/// the free-particle limit contribute both edges of every band.
pub fn spectrum<T: Scalar>(params: &PotentialParams<T>, n_max: usize) -> Result<Vec<SpectrumLine<T>>> {
    let mut lines = Vec::new();
    for n in 0..=n_max {
        match params.regime() {
            Regime::BoundStates => lines.push(bound_energy(params, n)?),
            Regime::Bands | Regime::FreeParticle => {
                let (lo, hi) = edges_unchecked(params, n, params.regime());
                lines.push(lo);
                lines.push(hi);
            }
            Regime::Unsupported => {
                return Err(ScarfError::Parameter(format!(
                    "unsupported coupling s = {}",
                    params.s()
                )))
            }
        }
    }
    lines.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap_or(std::cmp::Ordering::Equal));
    Ok(lines)
}

/// Closed-form levels with energy at most `e_max`.
pub fn levels_below<T: Scalar>(params: &PotentialParams<T>, e_max: T) -> Result<Vec<SpectrumLine<T>>> {
    let lambda_max = if e_max > T::zero() {
        (e_max / params.energy_scale()).sqrt()
    } else {
        T::zero()
    };
    let n_max = (lambda_max + params.s()).ceil().to_usize().unwrap_or(0) + 1;
    Ok(spectrum(params, n_max)?
        .into_iter()
        .filter(|l| l.energy <= e_max)
        .collect())
}

/// Width of band `n` and the gap above it, `(E+_n - E-_n, E-_{n+1} - E+_n)`.
pub fn band_width_and_gap<T: Scalar>(params: &PotentialParams<T>, n: usize) -> Result<(T, T)> {
    let regime = params.regime();
    if !matches!(regime, Regime::Bands | Regime::FreeParticle) {
        return Err(ScarfError::Regime {
            expected: Regime::Bands,
            found: regime,
        });
    }
    let (lo, hi) = edges_unchecked(params, n, regime);
    let (next_lo, _) = edges_unchecked(params, n + 1, regime);
    Ok((hi.energy - lo.energy, next_lo.energy - hi.energy))
}
