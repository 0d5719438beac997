use std::path::{Path, PathBuf};

use serde::Deserialize;

use scarf_core::{Edge, Params};

use crate::args::{Cli, Command, EdgeArg, Format, OracleKind};
use crate::error::CliError;

pub const DEFAULT_N_MAX: usize = 3;
pub const DEFAULT_SAMPLES: usize = 256;
pub const DEFAULT_TOL: f64 = 1e-8;

/// Contents of `--config`. Every field is optional; flags win over the file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub s: Option<f64>,
    pub a: Option<f64>,
    pub m: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub n_max: Option<usize>,
    pub n: Option<usize>,
    pub edge: Option<EdgeArg>,
    pub samples: Option<usize>,
    pub oracle: Option<OracleKind>,
    pub tol: Option<f64>,
    pub lambda: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::io(format!("reading config {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: Params,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub n_max: usize,
    pub n: usize,
    pub edge: Option<Edge>,
    pub samples: usize,
    pub oracle: OracleKind,
    pub tol: f64,
    pub lambda: Option<f64>,
}

pub fn edge_of(arg: EdgeArg) -> Edge {
    match arg {
        EdgeArg::Lower => Edge::Lower,
        EdgeArg::Upper => Edge::Upper,
    }
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.global.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let g = &cli.global;
        let s =
            g.s.or(file.s)
                .ok_or_else(|| CliError::Input("--s is required (flag or config file)".into()))?;
        let a = g.a.or(file.a).unwrap_or(1.0);
        let m = g.m.or(file.m).unwrap_or(1.0);
        let params = Params::new(s, a, m)?;

        let (mut n_max, mut n, mut edge, mut samples, mut oracle, mut tol, mut lambda) =
            (None, None, None, None, None, None, None);
        match &cli.command {
            Command::Spectrum(c) | Command::Bands(c) => n_max = c.n_max,
            Command::Wavefunction(c) => {
                n = c.n;
                edge = c.edge;
                samples = c.samples;
            }
            Command::Verify(c) => {
                n_max = c.n_max;
                oracle = c.oracle;
                tol = c.tol;
            }
            Command::Table1(c) => {
                lambda = c.lambda;
                n = c.n;
                edge = c.edge;
            }
        }

        let config = RunConfig {
            params,
            format: g.format.or(file.format).unwrap_or(Format::Json),
            out: g.out.clone().or(file.out),
            n_max: n_max.or(file.n_max).unwrap_or(DEFAULT_N_MAX),
            n: n.or(file.n).unwrap_or(0),
            edge: edge.or(file.edge).map(edge_of),
            samples: samples.or(file.samples).unwrap_or(DEFAULT_SAMPLES),
            oracle: oracle.or(file.oracle).unwrap_or(OracleKind::Both),
            tol: tol.or(file.tol).unwrap_or(DEFAULT_TOL),
            lambda: lambda.or(file.lambda),
        };
        if !(config.tol.is_finite() && config.tol > 0.0) {
            return Err(CliError::Input(format!("--tol must be positive, got {}", config.tol)));
        }
        if config.samples < 2 {
            return Err(CliError::Input(format!(
                "--samples must be at least 2, got {}",
                config.samples
            )));
        }
        Ok(config)
    }
}
