use serde::Serialize;

use scarf_core::{Level, Params};

#[derive(Debug, Clone, Serialize)]
pub struct ParamsOut {
    pub s: f64,
    pub a: f64,
    pub m: f64,
    pub v0: f64,
}

impl From<&Params> for ParamsOut {
    fn from(p: &Params) -> Self {
        Self {
            s: p.s(),
            a: p.a(),
            m: p.m(),
            v0: p.v0(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelOut {
    pub n: usize,
    pub edge: Option<&'static str>,
    pub lambda: f64,
    pub energy: f64,
    pub nu1: f64,
    pub nu2: f64,
}

impl From<&Level> for LevelOut {
    fn from(l: &Level) -> Self {
        Self {
            n: l.n,
            edge: l.edge.label(),
            lambda: l.lambda,
            energy: l.energy,
            nu1: l.nu1,
            nu2: l.nu2,
        }
    }
}

/// One verification outcome. `delta` is the quantity compared with
/// `tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub n: Option<usize>,
    pub edge: Option<&'static str>,
    pub measured: f64,
    pub expected: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(
        name: &'static str,
        level: Option<&Level>,
        measured: f64,
        expected: f64,
        delta: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name,
            n: level.map(|l| l.n),
            edge: level.and_then(|l| l.edge.label()),
            measured,
            expected,
            delta,
            tolerance,
            pass: delta.is_finite() && delta <= tolerance,
            note: None,
        }
    }

    /// `|measured - expected| / scale`.
    pub fn scaled(
        name: &'static str,
        level: Option<&Level>,
        measured: f64,
        expected: f64,
        scale: f64,
        tolerance: f64,
    ) -> Self {
        Self::new(
            name,
            level,
            measured,
            expected,
            (measured - expected).abs() / scale,
            tolerance,
        )
    }

    /// `|measured - expected|`.
    pub fn absolute(name: &'static str, level: Option<&Level>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self::new(name, level, measured, expected, (measured - expected).abs(), tolerance)
    }

    /// A check that could not be evaluated.
    pub fn failed(name: &'static str, level: Option<&Level>, expected: f64, tolerance: f64, note: String) -> Self {
        let mut c = Self::new(name, level, f64::NAN, expected, f64::NAN, tolerance);
        c.note = Some(note);
        c
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report<X: Serialize> {
    pub params: ParamsOut,
    pub regime: &'static str,
    pub levels: Vec<LevelOut>,
    pub checks: Vec<Check>,
    #[serde(flatten)]
    pub extra: X,
}

impl<X: Serialize> Report<X> {
    pub fn new(params: &Params, levels: &[Level], checks: Vec<Check>, extra: X) -> Self {
        Self {
            params: params.into(),
            regime: params.regime().as_str(),
            levels: levels.iter().map(LevelOut::from).collect(),
            checks,
            extra,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NoExtra {}
