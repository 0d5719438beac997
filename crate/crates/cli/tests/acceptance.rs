//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use scarf_core::oracle::{fd_bound_spectrum, scan_spectrum, Family, OracleResult};
use scarf_core::probe::uniform_grid;
use scarf_core::spectrum::band_width_and_gap;
use scarf_core::wavefunction::{parity_defect, schrodinger_residual};
use scarf_core::{
    band_edge_energies, bound_energy, boundary_exponent, build_wavefunction, count_nodes, enumerate_residue_sets,
    parity, residue_report, verify_riccati, ChiFunction, Edge, ExponentChoice, Level, MatchKind, Params,
    ShootingConfig,
};

const SHOOT_TOL: f64 = 1e-8;
const FD_TOL: f64 = 1e-4;
const FD_GRID: usize = 4000;
const SUM_RULE_TOL: f64 = 1e-9;
const RESIDUE_TOL: f64 = 1e-10;
const RICCATI_TOL: f64 = 1e-10;
const SCHRODINGER_TOL: f64 = 1e-8;
const NEGATIVE_CONTROL_MIN: f64 = 1e-3;
const GAP_TOL: f64 = 1e-12;
const NEAR_DEGENERACY_TOL: f64 = 1e-6;
const EXPONENT_TOL: f64 = 1e-3;
const PARITY_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn params(s: f64) -> Params {
    Params::with_coupling(s).expect("valid coupling")
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn base_config(p: &Params) -> ShootingConfig<f64> {
    ShootingConfig::new(p, ExponentChoice::Plus, MatchKind::SlopeAtMid)
}

fn bound_levels(p: &Params, n_max: usize) -> Vec<Level> {
    (0..=n_max).map(|n| bound_energy(p, n).expect("bound level")).collect()
}

fn band_levels(p: &Params, n_max: usize) -> Vec<Level> {
    (0..=n_max)
        .flat_map(|n| {
            let (lo, hi) = band_edge_energies(p, n).expect("band edges");
            [lo, hi]
        })
        .collect()
}

/// Shooting roots classified as `(n, edge)`.
fn matched<'a>(results: &'a [OracleResult<f64>], level: &Level) -> Vec<&'a OracleResult<f64>> {
    results
        .iter()
        .filter(|r| r.classification == Some((level.n, level.edge)))
        .collect()
}

fn expected_family(level: &Level) -> Family {
    let exponent = match level.edge {
        Edge::Lower => ExponentChoice::Minus,
        Edge::Upper | Edge::NotApplicable => ExponentChoice::Plus,
    };
    let kind = if level.n.is_multiple_of(2) {
        MatchKind::SlopeAtMid
    } else {
        MatchKind::ValueAtMid
    };
    Family::new(exponent, kind)
}

fn bound_spectrum() -> Outcome {
    let start = Instant::now();
    let p = params(2.0);
    let levels = bound_levels(&p, 3);
    for (n, l) in levels.iter().enumerate() {
        let lambda = n as f64 + 2.5;
        if rel(l.energy, PI * PI / 2.0 * lambda * lambda) > 1e-14 {
            return outcome(false, format!("closed form E_{n} = {} off formula", l.energy));
        }
    }
    let e_max = levels[3].energy * 1.02;
    let scan = match scan_spectrum(&p, e_max, &base_config(&p)) {
        Ok(r) if r.is_complete() => r,
        Ok(r) => return outcome(false, format!("scan errors: {:?}", r.errors)),
        Err(e) => return outcome(false, format!("scan failed: {e}")),
    };
    let mut worst_shoot = 0.0f64;
    for l in &levels {
        match matched(&scan.results, l).as_slice() {
            [r] => worst_shoot = worst_shoot.max(rel(r.energy, l.energy)),
            m => return outcome(false, format!("level n = {} matched {} shooting roots", l.n, m.len())),
        }
    }
    if scan.results.len() != levels.len() {
        return outcome(
            false,
            format!("{} shooting roots for {} levels", scan.results.len(), levels.len()),
        );
    }
    let fd = match fd_bound_spectrum(&p, FD_GRID, levels.len()) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("finite difference failed: {e}")),
    };
    let worst_fd = levels
        .iter()
        .zip(&fd)
        .map(|(l, e)| rel(*e, l.energy))
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = worst_shoot <= SHOOT_TOL && worst_fd <= FD_TOL && elapsed < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "s=2, n=0..3: shooting max rel err {worst_shoot:.2e} (tol {SHOOT_TOL:e}), FD N={FD_GRID} max rel err {worst_fd:.2e} (tol {FD_TOL:e}), {:.2}s (limit 10s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn band_edges() -> Outcome {
    let start = Instant::now();
    let p = params(0.4);
    let levels = band_levels(&p, 2);
    let e_max = levels.iter().fold(0.0f64, |m, l| m.max(l.energy)) * 1.02;
    let scan = match scan_spectrum(&p, e_max, &base_config(&p)) {
        Ok(r) if r.is_complete() => r,
        Ok(r) => return outcome(false, format!("scan errors: {:?}", r.errors)),
        Err(e) => return outcome(false, format!("scan failed: {e}")),
    };
    let mut worst = 0.0f64;
    for l in &levels {
        match matched(&scan.results, l).as_slice() {
            [r] => {
                worst = worst.max(rel(r.energy, l.energy));
                if r.family != Some(expected_family(l)) {
                    return outcome(
                        false,
                        format!(
                            "edge ({}, {:?}) found by {:?}, expected {:?}",
                            l.n,
                            l.edge,
                            r.family,
                            expected_family(l)
                        ),
                    );
                }
            }
            m => return outcome(false, format!("edge ({}, {:?}) matched {} roots", l.n, l.edge, m.len())),
        }
    }
    let unmatched = scan.results.iter().filter(|r| r.classification.is_none()).count();
    let elapsed = start.elapsed();
    let pass = worst <= SHOOT_TOL && unmatched == 0 && elapsed < Duration::from_secs(20);
    outcome(
        pass,
        format!(
            "s=0.4, six edges n=0..2: max rel err {worst:.2e} (tol {SHOOT_TOL:e}), families as predicted, {unmatched} unmatched roots, {:.2}s (limit 20s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn residue_table() -> Outcome {
    let mut rows = 0;
    for s in [0.1, 0.25, 0.4] {
        let p = params(s);
        for l in band_levels(&p, 2) {
            let sets = match enumerate_residue_sets(s, l.lambda) {
                Ok(v) => v,
                Err(e) => return outcome(false, format!("s={s}, lambda={}: {e}", l.lambda)),
            };
            let valid: Vec<_> = sets.iter().filter(|r| r.valid).collect();
            if valid.len() != 1 {
                return outcome(
                    false,
                    format!("s={s}, edge ({}, {:?}): {} valid sets", l.n, l.edge, valid.len()),
                );
            }
            if (valid[0].n_value - l.n as f64).abs() > 1e-9 {
                return outcome(false, format!("s={s}: valid set implies n = {}", valid[0].n_value));
            }
            if sets.iter().any(|r| r.set_id >= 3 && r.valid) {
                return outcome(false, format!("s={s}: set 3 or 4 marked valid"));
            }
            rows += 1;
        }
    }
    outcome(
        true,
        format!("{rows} band edges over s in {{0.1, 0.25, 0.4}}: exactly one valid set each, sets 3 and 4 never valid"),
    )
}

fn criterion_states() -> Vec<(Params, Level)> {
    let bound = params(2.0);
    let band = params(0.4);
    let mut states: Vec<(Params, Level)> = bound_levels(&bound, 3).into_iter().map(|l| (bound, l)).collect();
    states.extend(band_levels(&band, 2).into_iter().map(|l| (band, l)));
    states
}

fn sum_rule() -> Outcome {
    let mut worst_sum = 0.0f64;
    let mut worst_b1 = 0.0f64;
    let mut worst_d1 = 0.0f64;
    for (p, l) in criterion_states() {
        let spec = match build_wavefunction(&p, &l) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        };
        let rep = match residue_report(&spec) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        };
        let b1 = (1.0 - l.lambda) / 2.0;
        worst_sum = worst_sum.max(rep.sum_rule_defect);
        worst_b1 = worst_b1
            .max((rep.b1_measured.re - b1).hypot(rep.b1_measured.im))
            .max((rep.b1_prime_measured.re - b1).hypot(rep.b1_prime_measured.im));
        let s = p.s();
        let d1 = match l.edge {
            Edge::NotApplicable | Edge::Upper => 0.5 - s,
            Edge::Lower => 0.5 + s,
        };
        worst_d1 = worst_d1.max((rep.d1_measured.re - d1).hypot(rep.d1_measured.im));
        if rep.moving_pole_count != l.n {
            return outcome(
                false,
                format!("state ({}, {:?}): {} moving poles", l.n, l.edge, rep.moving_pole_count),
            );
        }
    }
    let pass = worst_sum <= SUM_RULE_TOL && worst_b1 <= RESIDUE_TOL && worst_d1 <= RESIDUE_TOL;
    outcome(
        pass,
        format!(
            "10 states: max sum-rule defect {worst_sum:.2e} (tol {SUM_RULE_TOL:e}), max |b1 - (1-lambda)/2| {worst_b1:.2e}, max |d1 - d1_expected| {worst_d1:.2e} (tol {RESIDUE_TOL:e})"
        ),
    )
}

fn residuals() -> Outcome {
    let mut worst_riccati = 0.0f64;
    let mut worst_schrodinger = 0.0f64;
    for (p, l) in criterion_states() {
        let spec = match build_wavefunction(&p, &l) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        };
        let chi = match ChiFunction::from_spec(&spec) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        };
        let extent = chi.roots().iter().fold(5.0f64, |m, r| m.max(1.2 * r.abs()));
        let r = verify_riccati(&chi, &uniform_grid(64, extent), l.lambda, p.s());
        worst_riccati = worst_riccati.max(r / (1.0 + l.lambda * l.lambda));
        match schrodinger_residual(&spec, 200, 1e-3) {
            Ok((res, scale)) => worst_schrodinger = worst_schrodinger.max(res / scale),
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        }
    }
    let p = params(2.0);
    let spec = build_wavefunction(&p, &bound_energy(&p, 0).expect("level")).expect("state");
    let chi = ChiFunction::from_spec(&spec).expect("chi");
    let control = verify_riccati(&chi, &uniform_grid(64, 5.0), 2.6, 2.0);
    let pass = worst_riccati <= RICCATI_TOL && worst_schrodinger <= SCHRODINGER_TOL && control >= NEGATIVE_CONTROL_MIN;
    outcome(
        pass,
        format!(
            "max Riccati residual / (1+lambda^2) {worst_riccati:.2e} (tol {RICCATI_TOL:e}), max Schroedinger rel residual {worst_schrodinger:.2e} (tol {SCHRODINGER_TOL:e}), lambda 2.5 -> 2.6 control {control:.2e} (min {NEGATIVE_CONTROL_MIN:e})"
        ),
    )
}

fn gap_closure() -> Outcome {
    let mut worst_gap = 0.0f64;
    for s in [0.45, 0.49, 0.499] {
        let p = params(s);
        for n in 0..=2 {
            let (_, gap) = match band_width_and_gap(&p, n) {
                Ok(v) => v,
                Err(e) => return outcome(false, format!("s={s}: {e}")),
            };
            let formula = p.energy_scale() * (2 * n + 2) as f64 * (1.0 - 2.0 * s);
            worst_gap = worst_gap.max(rel(gap, formula));
        }
    }
    let p = params(0.499);
    let levels = band_levels(&p, 3);
    let e_max = levels.iter().fold(0.0f64, |m, l| m.max(l.energy)) * 1.02;
    let scan = match scan_spectrum(&p, e_max, &base_config(&p)) {
        Ok(r) if r.is_complete() => r,
        Ok(r) => return outcome(false, format!("scan errors: {:?}", r.errors)),
        Err(e) => return outcome(false, format!("scan failed: {e}")),
    };
    let mut worst_shoot = 0.0f64;
    for n in 0..=2 {
        let upper = band_edge_energies(&p, n).expect("edges").1;
        let lower_next = band_edge_energies(&p, n + 1).expect("edges").0;
        let (u, l) = match (
            matched(&scan.results, &upper).as_slice(),
            matched(&scan.results, &lower_next).as_slice(),
        ) {
            ([u], [l]) => (u.energy, l.energy),
            _ => return outcome(false, format!("s=0.499: edges around gap {n} not resolved by shooting")),
        };
        worst_shoot = worst_shoot.max(((l - u) - (lower_next.energy - upper.energy)).abs());
    }
    let pass = worst_gap <= GAP_TOL && worst_shoot <= NEAR_DEGENERACY_TOL;
    outcome(
        pass,
        format!(
            "closed-form gaps vs (pi^2/2ma^2)(2n+2)(1-2s): max rel err {worst_gap:.2e} (tol {GAP_TOL:e}); s=0.499 shooting gaps n=0..2 differ from closed form by at most {worst_shoot:.2e} (tol {NEAR_DEGENERACY_TOL:e})"
        ),
    )
}

fn structure() -> Outcome {
    let bound = params(2.0);
    let band = params(0.4);
    let mut states: Vec<(Params, Level)> = bound_levels(&bound, 5).into_iter().map(|l| (bound, l)).collect();
    states.extend(band_levels(&band, 5).into_iter().map(|l| (band, l)));
    let mut worst_exp = 0.0f64;
    let mut worst_parity = 0.0f64;
    for (p, l) in &states {
        let spec = match build_wavefunction(p, l) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        };
        match count_nodes(&spec, 4096) {
            Ok(nodes) if nodes == l.n => {}
            Ok(nodes) => return outcome(false, format!("state ({}, {:?}) has {nodes} nodes", l.n, l.edge)),
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        }
        worst_parity = worst_parity.max(parity_defect(&spec, parity(&spec), 200));
        let predicted = match l.edge {
            Edge::Lower => 0.5 - p.s(),
            Edge::Upper | Edge::NotApplicable => 0.5 + p.s(),
        };
        match boundary_exponent(&spec) {
            Ok(mu) => worst_exp = worst_exp.max((mu - predicted).abs()),
            Err(e) => return outcome(false, format!("state ({}, {:?}): {e}", l.n, l.edge)),
        }
    }
    let pass = worst_exp <= EXPONENT_TOL && worst_parity <= PARITY_TOL;
    outcome(
        pass,
        format!(
            "{} states (s=2 and s=0.4, n<=5): node count = n, max parity defect {worst_parity:.2e} (tol {PARITY_TOL:e}), max exponent error {worst_exp:.2e} (tol {EXPONENT_TOL:e})",
            states.len()
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_scarf"))
            .args([
                "verify", "--s", "2", "--n-max", "2", "--oracle", "both", "--format", "json",
            ])
            .env_remove("SCARF_LOG")
            .output()
    };
    let (a, b) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return outcome(false, "could not run the scarf binary".into()),
    };
    let pass = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    outcome(
        pass,
        format!(
            "two `scarf verify --s 2 --n-max 2 --oracle both --format json` runs: exit {:?}/{:?}, {} bytes, identical = {}",
            a.status.code(),
            b.status.code(),
            a.stdout.len(),
            a.stdout == b.stdout
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("bound spectrum", bound_spectrum),
        ("band edges", band_edges),
        ("residue table", residue_table),
        ("residue sum rule", sum_rule),
        ("Riccati and Schroedinger residuals", residuals),
        ("gap closure", gap_closure),
        ("node, parity and exponent structure", structure),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failures += 1;
        }
        println!(
            "criterion {} [{}] {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
