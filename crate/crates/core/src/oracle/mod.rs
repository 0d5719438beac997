//! Independent eigensolvers in `x`: shooting from the lattice wall and a
//! finite-difference hard-wall discretization. Neither uses the closed forms
//! except to label results after the fact.

mod fd;
mod integrator;
mod scan;
mod shooting;

pub use fd::{fd_bound_spectrum, fd_eigenvalues};
pub use integrator::{integrate, IntegrationStats};
pub use scan::{scan_spectrum, FamilyError, ScanReport};
pub use shooting::{find_eigen, shoot, ShootingConfig};

use crate::spectrum::Edge;

/// Near-wall behaviour `psi ~ x^mu` of the shot solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExponentChoice {
    /// `mu = 1/2 + s`
    Plus,
    /// `mu = 1/2 - s`
    Minus,
}

/// Condition imposed at the cell centre `x = a/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatchKind {
    /// `psi(a/2) = 0`: odd states.
    ValueAtMid,
    /// `psi'(a/2) = 0`: even states.
    SlopeAtMid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Shooting,
    FiniteDifference,
}

impl OracleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleMethod::Shooting => "shooting",
            OracleMethod::FiniteDifference => "finite_difference",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    pub exponent: ExponentChoice,
    pub match_kind: MatchKind,
}

impl Family {
    pub const fn new(exponent: ExponentChoice, match_kind: MatchKind) -> Self {
        Self { exponent, match_kind }
    }

    /// Edge type whose levels this family can reach.
    pub fn edge(self, bound: bool) -> Edge {
        match (bound, self.exponent) {
            (true, _) => Edge::NotApplicable,
            (false, ExponentChoice::Plus) => Edge::Upper,
            (false, ExponentChoice::Minus) => Edge::Lower,
        }
    }

    /// Level parity selected by the centre condition: even `n` for
    /// `SlopeAtMid`, odd `n` for `ValueAtMid`.
    pub fn admits(self, n: usize) -> bool {
        match self.match_kind {
            MatchKind::SlopeAtMid => n.is_multiple_of(2),
            MatchKind::ValueAtMid => !n.is_multiple_of(2),
        }
    }

    pub fn label(self) -> &'static str {
        match (self.exponent, self.match_kind) {
            (ExponentChoice::Plus, MatchKind::SlopeAtMid) => "plus/slope",
            (ExponentChoice::Plus, MatchKind::ValueAtMid) => "plus/value",
            (ExponentChoice::Minus, MatchKind::SlopeAtMid) => "minus/slope",
            (ExponentChoice::Minus, MatchKind::ValueAtMid) => "minus/value",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub energy: T,
    pub bracket: (T, T),
    /// Matching function at the converged energy (shooting) or the Richardson
    /// correction `|E_extrapolated - E_2N|` (finite difference).
    pub residual: T,
    pub method: OracleMethod,
    /// `(n, edge)` of the nearest closed-form level, if within tolerance.
    pub classification: Option<(usize, Edge)>,
    /// Absolute energy shift when the start offset is halved.
    pub delta_sensitivity: T,
    /// Set when `delta_sensitivity` exceeds ten times the energy tolerance.
    pub flagged: bool,
    pub family: Option<Family>,
}
