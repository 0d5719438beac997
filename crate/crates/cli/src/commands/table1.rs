use serde::Serialize;

use scarf_core::enumerate_residue_sets;

use super::select_level;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::emit;
use crate::report::Report;

#[derive(Debug, Clone, Serialize)]
struct ResidueRow {
    set_id: u8,
    b1: f64,
    b1_prime: f64,
    d1: f64,
    n: f64,
    valid: bool,
    remark: String,
}

#[derive(Debug, Clone, Serialize)]
struct Table1Extra {
    lambda: f64,
    residue_sets: Vec<ResidueRow>,
}

pub fn run_table1(config: &RunConfig) -> Result<bool, CliError> {
    let params = &config.params;
    let (lambda, levels) = match config.lambda {
        Some(lambda) => (lambda, Vec::new()),
        None => {
            let level = select_level(params, config.n, config.edge)?;
            (level.lambda, vec![level])
        }
    };
    let rows: Vec<ResidueRow> = enumerate_residue_sets(params.s(), lambda)?
        .into_iter()
        .map(|r| ResidueRow {
            set_id: r.set_id,
            b1: r.b1,
            b1_prime: r.b1_prime,
            d1: r.d1,
            n: r.n_value,
            valid: r.valid,
            remark: match r.rejection_reason {
                None => "valid".to_string(),
                Some(reason) => format!("not valid: {reason}"),
            },
        })
        .collect();
    let report = Report::new(
        params,
        &levels,
        Vec::new(),
        Table1Extra {
            lambda,
            residue_sets: rows,
        },
    );
    emit(config, &report, &report.extra.residue_sets)?;
    Ok(true)
}
