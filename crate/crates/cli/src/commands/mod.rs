mod spectrum;
mod table1;
mod verify;
mod wavefunction;

pub use spectrum::run_spectrum;
pub use table1::run_table1;
pub use verify::run_verify;
pub use wavefunction::run_wavefunction;

use scarf_core::{Edge, Level, Params, Regime};

use crate::error::CliError;

/// The closed-form level `(n, edge)`; `edge` must be given exactly for band
/// states and omitted for bound states.
pub(crate) fn select_level(params: &Params, n: usize, edge: Option<Edge>) -> Result<Level, CliError> {
    match (params.regime(), edge) {
        (Regime::BoundStates, Some(_)) => {
            return Err(CliError::Input(
                "--edge applies only to band states (0 < s <= 1/2)".into(),
            ))
        }
        (Regime::Bands | Regime::FreeParticle, None) => {
            return Err(CliError::Input("band states need --edge lower|upper".into()))
        }
        _ => {}
    }
    let want = edge.unwrap_or(Edge::NotApplicable);
    scarf_core::spectrum(params, n)?
        .into_iter()
        .find(|l| l.n == n && l.edge == want)
        .ok_or_else(|| CliError::Input(format!("no level n = {n} with edge {want:?}")))
}
