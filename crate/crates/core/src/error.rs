use thiserror::Error;

use crate::potential::Regime;

pub type Result<T> = std::result::Result<T, ScarfError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScarfError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("potential is singular at x = {x} (lattice point)")]
    Singularity { x: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operation requires regime {expected:?}, found {found:?}")]
    Regime { expected: Regime, found: Regime },

    #[error("degenerate regime: {0}")]
    Degenerate(String),

    #[error("polynomial construction failed: {0}")]
    Construction(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("no sign change of the matching function on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("contour error: {0}")]
    Contour(String),

    #[error("inconsistent inputs: {0}")]
    Consistency(String),

    #[error("sign-change ambiguity near x = {x}; increase resolution")]
    Resolution { x: f64 },
}
