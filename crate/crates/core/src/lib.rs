//! Exact spectrum and eigenfunctions of the periodic Scarf potential from the
//! residue structure of the quantum momentum function, with independent
//! numerical cross-checks.
//!
//! All math is generic over [`Scalar`] (`f32` or `f64`); the `f64` aliases at
//! the crate root cover the common case.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod oracle;
pub mod polynomial;
pub mod potential;
pub mod probe;
pub mod quadrature;
pub mod scalar;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Result, ScarfError};
pub use oracle::{
    fd_bound_spectrum, find_eigen, scan_spectrum, shoot, ExponentChoice, MatchKind, OracleResult, ShootingConfig,
};
pub use polynomial::{build_poly, jacobi_eval, jacobi_parameters, real_roots, PolySpec};
pub use potential::{classify_regime, cot_map, evaluate_potential, inverse_cot_map, PotentialParams, Regime};
pub use probe::{
    contour_residue, count_moving_poles, residue_at_infinity, residue_report, verify_riccati, ChiFunction,
    ResidueReport,
};
pub use scalar::Scalar;
pub use spectrum::{
    admissible_d1, band_edge_energies, bound_energy, enumerate_residue_sets, fixed_pole_residue_candidates,
    free_particle_edges, infinity_residue_candidates, lambda_of_energy, spectrum, Edge, ResidueSet, SpectrumLine,
};
pub use wavefunction::{
    boundary_exponent, build_wavefunction, count_nodes, eval_psi, parity, Parity, PsiValue, WavefunctionSpec,
};

pub type Params = PotentialParams<f64>;
pub type Level = SpectrumLine<f64>;
pub type Residues = ResidueSet<f64>;
pub type Poly = PolySpec<f64>;
pub type Wavefunction = WavefunctionSpec<f64>;
pub type Oracle = oracle::OracleResult<f64>;
