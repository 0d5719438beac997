use scarf_core::oracle::{fd_bound_spectrum, scan_spectrum, ExponentChoice, MatchKind, OracleResult, ShootingConfig};
use scarf_core::wavefunction::{parity_defect, schrodinger_residual};
use scarf_core::{
    boundary_exponent, build_wavefunction, count_nodes, parity, residue_report, spectrum, Level, Params, Regime,
};

use crate::args::OracleKind;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::emit;
use crate::report::{Check, NoExtra, Report};

pub const FD_GRID_POINTS: usize = 4000;
pub const FD_TOLERANCE: f64 = 1e-4;
pub const DELTA_TOLERANCE: f64 = 1e-9;
pub const RESIDUE_TOLERANCE: f64 = 1e-10;
pub const SUM_RULE_TOLERANCE: f64 = 1e-9;
pub const QMF_PARITY_TOLERANCE: f64 = 1e-12;
pub const SCHRODINGER_TOLERANCE: f64 = 1e-8;
pub const PSI_PARITY_TOLERANCE: f64 = 1e-10;
pub const EXPONENT_TOLERANCE: f64 = 1e-3;

pub fn run_verify(config: &RunConfig) -> Result<bool, CliError> {
    let params = &config.params;
    let regime = params.regime();
    match regime {
        Regime::FreeParticle => {
            return Err(CliError::Input(
                "verify needs s != 1/2; the free-particle limit has a zero-energy edge the oracles cannot bracket"
                    .into(),
            ))
        }
        Regime::Bands if config.oracle == OracleKind::Fd => {
            return Err(CliError::Input(
                "the finite-difference oracle applies only to s > 1/2".into(),
            ))
        }
        _ => {}
    }
    let levels = spectrum(params, config.n_max)?;
    let shooting = match config.oracle {
        OracleKind::Shooting | OracleKind::Both => Some(run_scan(params, &levels)),
        OracleKind::Fd => None,
    };
    let fd = match (config.oracle, regime) {
        (OracleKind::Fd | OracleKind::Both, Regime::BoundStates) => {
            Some(fd_bound_spectrum(params, FD_GRID_POINTS, levels.len()).map_err(|e| e.to_string()))
        }
        _ => None,
    };

    let mut checks = Vec::new();
    if let Some(Err(note)) = &shooting {
        checks.push(Check::failed("shooting_scan", None, 0.0, 0.0, note.clone()));
    }
    for (index, level) in levels.iter().enumerate() {
        if let Some(Ok(results)) = &shooting {
            shooting_checks(&mut checks, level, energy_unit(params, level), results, config.tol);
        }
        match &fd {
            Some(Ok(energies)) => checks.push(Check::scaled(
                "energy_fd",
                Some(level),
                energies[index],
                level.energy,
                energy_unit(params, level),
                FD_TOLERANCE,
            )),
            Some(Err(note)) => checks.push(Check::failed(
                "energy_fd",
                Some(level),
                level.energy,
                FD_TOLERANCE,
                note.clone(),
            )),
            None => {}
        }
        state_checks(&mut checks, params, level);
    }

    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        log::error!("{failed} of {} checks failed", checks.len());
    } else {
        log::info!("all {} checks passed", checks.len());
    }
    let report = Report::new(params, &levels, checks, NoExtra {});
    emit(config, &report, &report.checks)?;
    Ok(failed == 0)
}

fn run_scan(params: &Params, levels: &[Level]) -> Result<Vec<OracleResult<f64>>, String> {
    let top = levels.iter().fold(0.0f64, |m, l| m.max(l.energy));
    let e_max = top * 1.02 + params.energy_scale() * 0.05;
    let base = ShootingConfig::new(params, ExponentChoice::Plus, MatchKind::SlopeAtMid);
    let report = scan_spectrum(params, e_max, &base).map_err(|e| e.to_string())?;
    for err in &report.errors {
        log::warn!("shooting family {}: {}", err.family.label(), err.error);
    }
    if report.is_complete() {
        Ok(report.results)
    } else {
        Err(report
            .errors
            .iter()
            .map(|e| format!("{}: {}", e.family.label(), e.error))
            .collect::<Vec<_>>()
            .join("; "))
    }
}

/// Denominator of relative energy comparisons: `max(|E|, pi^2 / (2 m a^2))`.
/// Equal to `|E|` for every level except the lowest band edges, whose energy
/// tends to zero as `s -> 1/2`.
fn energy_unit(params: &Params, level: &Level) -> f64 {
    level.energy.abs().max(params.energy_scale())
}

fn shooting_checks(checks: &mut Vec<Check>, level: &Level, unit: f64, results: &[OracleResult<f64>], tol: f64) {
    let matches: Vec<&OracleResult<f64>> = results
        .iter()
        .filter(|r| r.classification == Some((level.n, level.edge)))
        .collect();
    match matches.as_slice() {
        [r] => {
            checks.push(Check::scaled(
                "energy_shooting",
                Some(level),
                r.energy,
                level.energy,
                unit,
                tol,
            ));
            checks.push(Check::new(
                "shooting_delta_sensitivity",
                Some(level),
                r.delta_sensitivity,
                0.0,
                r.delta_sensitivity / unit,
                DELTA_TOLERANCE,
            ));
        }
        found => checks.push(Check::failed(
            "energy_shooting",
            Some(level),
            level.energy,
            tol,
            format!("{} shooting roots matched this level", found.len()),
        )),
    }
}

fn state_checks(checks: &mut Vec<Check>, params: &Params, level: &Level) {
    let l = Some(level);
    let spec = match build_wavefunction(params, level) {
        Ok(spec) => spec,
        Err(e) => {
            checks.push(Check::failed("wavefunction", l, 0.0, 0.0, e.to_string()));
            return;
        }
    };
    let b1 = (1.0 - level.lambda) / 2.0;
    match residue_report(&spec) {
        Ok(rep) => {
            let (b1m, b1pm, d1m) = (rep.b1_measured, rep.b1_prime_measured, rep.d1_measured);
            checks.push(Check::new(
                "b1_residue",
                l,
                b1m.re,
                b1,
                distance(b1m.re, b1m.im, b1),
                RESIDUE_TOLERANCE,
            ));
            checks.push(Check::new(
                "b1_prime_residue",
                l,
                b1pm.re,
                b1,
                distance(b1pm.re, b1pm.im, b1),
                RESIDUE_TOLERANCE,
            ));
            checks.push(Check::new(
                "d1_residue",
                l,
                d1m.re,
                level.d1,
                distance(d1m.re, d1m.im, level.d1),
                RESIDUE_TOLERANCE,
            ));
            let d0 = rep.d0_measured.norm();
            checks.push(Check::new("analytic_part_d0", l, d0, 0.0, d0, RESIDUE_TOLERANCE));
            checks.push(Check::absolute(
                "moving_pole_count",
                l,
                rep.moving_pole_count as f64,
                level.n as f64,
                0.0,
            ));
            let worst = rep
                .moving_residues
                .iter()
                .map(|r| distance(r.re, r.im, 1.0))
                .fold(0.0f64, f64::max);
            checks.push(Check::new(
                "moving_pole_residue",
                l,
                worst,
                0.0,
                worst,
                RESIDUE_TOLERANCE,
            ));
            checks.push(Check::new(
                "sum_rule",
                l,
                rep.sum_rule_defect,
                0.0,
                rep.sum_rule_defect,
                SUM_RULE_TOLERANCE,
            ));
            let riccati_tol = RESIDUE_TOLERANCE * (1.0 + level.lambda * level.lambda);
            checks.push(Check::new(
                "riccati_residual",
                l,
                rep.riccati_residual,
                0.0,
                rep.riccati_residual,
                riccati_tol,
            ));
            checks.push(Check::new(
                "qmf_parity",
                l,
                rep.parity_defect,
                0.0,
                rep.parity_defect,
                QMF_PARITY_TOLERANCE,
            ));
        }
        Err(e) => checks.push(Check::failed("residue_report", l, 0.0, 0.0, e.to_string())),
    }

    match schrodinger_residual(&spec, 200, 1e-3) {
        Ok((residual, scale)) => {
            let rel = residual / scale * level.energy.abs() / energy_unit(params, level);
            checks.push(Check::new(
                "schrodinger_residual",
                l,
                rel,
                0.0,
                rel,
                SCHRODINGER_TOLERANCE,
            ));
        }
        Err(e) => checks.push(Check::failed(
            "schrodinger_residual",
            l,
            0.0,
            SCHRODINGER_TOLERANCE,
            e.to_string(),
        )),
    }
    match count_nodes(&spec, 4096) {
        Ok(nodes) => checks.push(Check::absolute("node_count", l, nodes as f64, level.n as f64, 0.0)),
        Err(e) => checks.push(Check::failed("node_count", l, level.n as f64, 0.0, e.to_string())),
    }
    let pd = parity_defect(&spec, parity(&spec), 200);
    checks.push(Check::new("wavefunction_parity", l, pd, 0.0, pd, PSI_PARITY_TOLERANCE));
    let predicted = spec.predicted_exponent();
    match boundary_exponent(&spec) {
        Ok(mu) => checks.push(Check::absolute(
            "boundary_exponent",
            l,
            mu,
            predicted,
            EXPONENT_TOLERANCE,
        )),
        Err(e) => checks.push(Check::failed(
            "boundary_exponent",
            l,
            predicted,
            EXPONENT_TOLERANCE,
            e.to_string(),
        )),
    }
}

/// `|re + i im - want|`.
fn distance(re: f64, im: f64, want: f64) -> f64 {
    (re - want).hypot(im)
}
