use rayon::prelude::*;

use super::shooting::{find_eigen, shoot, ShootingConfig};
use super::{ExponentChoice, Family, MatchKind, OracleResult};
use crate::error::{Result, ScarfError};
use crate::potential::{PotentialParams, Regime};
use crate::scalar::{lit, Scalar};
use crate::spectrum::{levels_below, Edge};

/// Relative distance under which two roots of one family are the same level.
pub const DEDUP_TOLERANCE: f64 = 1e-8;
/// Relative distance within which a root is labelled with a closed-form level.
pub const CLASSIFY_TOLERANCE: f64 = 1e-6;
/// Scan step in units of `pi^2 / (2 m a^2)`.
pub const SCAN_STEP: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyError {
    pub family: Family,
    pub error: ScarfError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport<T> {
    /// Sorted by energy, then family.
    pub results: Vec<OracleResult<T>>,
    pub errors: Vec<FamilyError>,
}

impl<T: Scalar> ScanReport<T> {
    pub fn is_complete(&self) -> bool {
        self.errors.is_empty()
    }
}

fn families(regime: Regime) -> Vec<Family> {
    let matches = [MatchKind::SlopeAtMid, MatchKind::ValueAtMid];
    let exps: &[ExponentChoice] = match regime {
        Regime::BoundStates => &[ExponentChoice::Plus],
        _ => &[ExponentChoice::Plus, ExponentChoice::Minus],
    };
    exps.iter()
        .flat_map(|&e| matches.iter().map(move |&k| Family::new(e, k)))
        .collect()
}

/// Every eigenvalue below `e_max` reachable by the shooting families of the
/// regime. `cfg_base` supplies `delta`, tolerance and step limit; its family
/// fields are overridden per family. Roots are deduplicated only within a
/// family, so coinciding levels of different families are all kept.
pub fn scan_spectrum<T: Scalar>(
    params: &PotentialParams<T>,
    e_max: T,
    cfg_base: &ShootingConfig<T>,
) -> Result<ScanReport<T>> {
    if !(e_max > T::zero()) || !e_max.is_finite() {
        return Err(ScarfError::Parameter(format!("E_max must be positive, got {e_max}")));
    }
    let regime = params.regime();
    if regime == Regime::Unsupported {
        return Err(ScarfError::Parameter(format!(
            "unsupported coupling s = {}",
            params.s()
        )));
    }
    let step = params.energy_scale() * lit(SCAN_STEP);
    let start = step * lit(1e-9);
    let count = ((e_max - start) / step).ceil().to_usize().unwrap_or(0);
    let mut grid: Vec<T> = (0..count).map(|i| start + step * T::from_usize_lossy(i)).collect();
    grid.push(e_max);

    let closed = levels_below(params, e_max * (T::one() + lit(CLASSIFY_TOLERANCE)))?;
    let bound = regime == Regime::BoundStates;

    let per_family: Vec<(Vec<OracleResult<T>>, Vec<FamilyError>)> = families(regime)
        .into_par_iter()
        .map(|family| {
            let cfg = ShootingConfig {
                exponent_choice: family.exponent,
                match_kind: family.match_kind,
                ..*cfg_base
            };
            scan_family(params, &grid, &cfg, family, &closed, bound)
        })
        .collect();

    let mut results = Vec::new();
    let mut errors = Vec::new();
    for (r, e) in per_family {
        results.extend(r);
        errors.extend(e);
    }
    results.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.family.cmp(&b.family))
    });
    Ok(ScanReport { results, errors })
}

fn scan_family<T: Scalar>(
    params: &PotentialParams<T>,
    grid: &[T],
    cfg: &ShootingConfig<T>,
    family: Family,
    closed: &[crate::spectrum::SpectrumLine<T>],
    bound: bool,
) -> (Vec<OracleResult<T>>, Vec<FamilyError>) {
    let mut errors = Vec::new();
    let values: Vec<Result<T>> = grid.par_iter().map(|&e| shoot(params, e, cfg)).collect();
    let mut brackets = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for (&e, v) in grid.iter().zip(values) {
        match v {
            Ok(f) => {
                if let Some((pe, pf)) = prev {
                    if pf.signum() != f.signum() || f == T::zero() {
                        brackets.push((pe, e));
                    }
                }
                prev = if f == T::zero() { None } else { Some((e, f)) };
            }
            Err(error) => {
                errors.push(FamilyError { family, error });
                prev = None;
            }
        }
    }

    let solved: Vec<Result<OracleResult<T>>> = brackets.par_iter().map(|&b| find_eigen(params, b, cfg)).collect();
    let mut results: Vec<OracleResult<T>> = Vec::new();
    for r in solved {
        match r {
            Ok(mut r) => {
                let dup = results.iter().any(|q| {
                    (q.energy - r.energy).abs() <= lit::<T>(DEDUP_TOLERANCE) * r.energy.abs().max(q.energy.abs())
                });
                if !dup {
                    r.classification = classify(&r, family.edge(bound), closed);
                    results.push(r);
                }
            }
            Err(error) => errors.push(FamilyError { family, error }),
        }
    }
    (results, errors)
}

fn classify<T: Scalar>(
    r: &OracleResult<T>,
    edge: Edge,
    closed: &[crate::spectrum::SpectrumLine<T>],
) -> Option<(usize, Edge)> {
    closed
        .iter()
        .filter(|l| l.edge == edge)
        .map(|l| (l, (l.energy - r.energy).abs()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
        .filter(|(l, d)| *d <= lit::<T>(CLASSIFY_TOLERANCE) * l.energy.abs().max(r.energy.abs()))
        .map(|(l, _)| (l.n, l.edge))
}
