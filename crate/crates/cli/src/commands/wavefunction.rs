use serde::Serialize;

use scarf_core::wavefunction::sample_cell;
use scarf_core::{build_wavefunction, count_nodes};

use super::select_level;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::emit;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Serialize)]
struct SampleOut {
    x: f64,
    #[serde(rename = "V")]
    v: f64,
    psi: f64,
    psi_squared: f64,
}

#[derive(Debug, Clone, Serialize)]
struct WavefunctionExtra {
    samples: Vec<SampleOut>,
}

pub fn run_wavefunction(config: &RunConfig) -> Result<bool, CliError> {
    let params = &config.params;
    let level = select_level(params, config.n, config.edge)?;
    let spec = build_wavefunction(params, &level)?;
    let samples: Vec<SampleOut> = sample_cell(&spec, config.samples)?
        .into_iter()
        .map(|[x, v, psi, psi_squared]| SampleOut { x, v, psi, psi_squared })
        .collect();
    let nodes = count_nodes(&spec, 4096)?;
    let checks = vec![Check::absolute(
        "node_count",
        Some(&level),
        nodes as f64,
        level.n as f64,
        0.0,
    )];
    let pass = checks.iter().all(|c| c.pass);
    let report = Report::new(params, &[level], checks, WavefunctionExtra { samples });
    emit(config, &report, &report.extra.samples)?;
    Ok(pass)
}
