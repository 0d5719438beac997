use serde::Serialize;

use scarf_core::spectrum::band_width_and_gap;
use scarf_core::{spectrum, Regime};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::emit;
use crate::report::{LevelOut, Report};

#[derive(Debug, Clone, Serialize)]
struct BandOut {
    n: usize,
    lower: f64,
    upper: f64,
    width: f64,
    gap: f64,
}

#[derive(Debug, Clone, Serialize)]
struct SpectrumExtra {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    bands: Vec<BandOut>,
}

pub fn run_spectrum(config: &RunConfig, bands_only: bool) -> Result<bool, CliError> {
    let params = &config.params;
    let regime = params.regime();
    let banded = matches!(regime, Regime::Bands | Regime::FreeParticle);
    if bands_only && !banded {
        return Err(CliError::Input(format!(
            "bands needs 0 < s <= 1/2, got s = {}",
            params.s()
        )));
    }
    let levels = spectrum(params, config.n_max)?;
    let mut bands = Vec::new();
    if banded {
        for n in 0..=config.n_max {
            let (width, gap) = band_width_and_gap(params, n)?;
            let lower = levels.iter().find(|l| l.n == n && l.edge == scarf_core::Edge::Lower);
            let upper = levels.iter().find(|l| l.n == n && l.edge == scarf_core::Edge::Upper);
            if let (Some(lo), Some(hi)) = (lower, upper) {
                bands.push(BandOut {
                    n,
                    lower: lo.energy,
                    upper: hi.energy,
                    width,
                    gap,
                });
            }
        }
    }
    log::info!("{} levels, {} bands", levels.len(), bands.len());
    let report = Report::new(params, &levels, Vec::new(), SpectrumExtra { bands });
    let rows: Vec<LevelOut> = levels.iter().map(LevelOut::from).collect();
    emit(config, &report, &rows)?;
    Ok(true)
}
