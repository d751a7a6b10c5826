//! Command-line front end: spectra, validation, single cycles, sweeps and
//! limit checks, written as CSV or JSON, with optional SVG diagrams.
//!
//! [`run`] never prints; it returns the exit code, the report bytes and any
//! diagnostics, so the binary and the tests see the same thing.

pub mod cli;
pub mod format;
pub mod svg;
pub mod validate;

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{compare_jb, compare_otto, jb_cycle, otto_cycle, CycleComparison, CycleKind, CycleReport, Mode};
use crate::error::{Error, Result};
use crate::oracle::{solve_spectrum, OracleConfig};
use crate::well::{energy_level, PtWell, SpectrumParams};

use format::{csv_number, csv_optional, to_json, Csv, DEFAULT_PRECISION, MAX_PRECISION, MIN_PRECISION};
pub use svg::{pl_svg, render_pl_svg};
use validate::{limits_suite, validate_suite, CheckReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_N_MAX: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Spectrum,
    Validate,
    Jb,
    Otto,
    Sweep,
    Limits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepParam {
    #[serde(rename = "v0")]
    V0,
    L1,
    #[serde(rename = "rp")]
    Rp,
    L3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub scale: Scale,
}

impl SweepSpec {
    /// Parameter values in order, endpoints exact.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i == 0 {
                    return self.from;
                }
                if i + 1 == self.steps {
                    return self.to;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.from + t * (self.to - self.from),
                    Scale::Log => (self.from.ln() + t * (self.to.ln() - self.from.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSpec {
    pub command: Command,
    pub mass: f64,
    pub hbar: f64,
    pub v0: f64,
    pub l1: f64,
    pub rp: Option<f64>,
    pub l3: Option<f64>,
    /// Which cycle a `sweep` over `v0` or `L1` runs.
    pub cycle: CycleKind,
    /// Which report feeds the SVG, the stroke CSV and the sweep's work/heat columns.
    pub mode: Mode,
    pub samples: usize,
    pub n_max: usize,
    pub sweep: Option<SweepSpec>,
    pub format: Format,
    pub svg: Option<PathBuf>,
    pub strokes_csv: Option<PathBuf>,
    pub precision: usize,
}

impl RunSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            mass: 1.0,
            hbar: 1.0,
            v0: 0.0,
            l1: 1.0,
            rp: None,
            l3: None,
            cycle: CycleKind::JouleBrayton,
            mode: Mode::Exact,
            samples: DEFAULT_SAMPLES,
            n_max: DEFAULT_N_MAX,
            sweep: None,
            format: if command == Command::Spectrum || command == Command::Sweep {
                Format::Csv
            } else {
                Format::Json
            },
            svg: None,
            strokes_csv: None,
            precision: DEFAULT_PRECISION,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("mass", Some(self.mass)),
            ("hbar", Some(self.hbar)),
            ("v0", Some(self.v0)),
            ("L1", Some(self.l1)),
            ("rp", self.rp),
            ("L3", self.l3),
            ("from", self.sweep.map(|s| s.from)),
            ("to", self.sweep.map(|s| s.to)),
        ];
        for (name, v) in finite {
            if let Some(v) = v.filter(|v| !v.is_finite()) {
                return Err(Error::invalid(name, v, "must be finite"));
            }
        }
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&self.precision) {
            return Err(Error::invalid(
                "precision",
                self.precision as f64,
                "must lie in [6, 17]",
            ));
        }
        PtWell::new(self.mass, self.hbar, self.v0, self.l1)?;
        match self.command {
            Command::Jb if self.rp.is_none() => return Err(Error::invalid("rp", f64::NAN, "jb needs --rp")),
            Command::Otto if self.l3.is_none() => return Err(Error::invalid("L3", f64::NAN, "otto needs --L3")),
            Command::Sweep => {
                let s = self
                    .sweep
                    .ok_or(Error::invalid("param", f64::NAN, "sweep needs --param"))?;
                if s.steps < 2 {
                    return Err(Error::invalid(
                        "steps",
                        s.steps as f64,
                        "a sweep needs at least 2 steps",
                    ));
                }
                if s.scale == Scale::Log && !(s.from > 0.0 && s.to > 0.0) {
                    return Err(Error::invalid(
                        "from",
                        s.from.min(s.to),
                        "log sweeps need positive endpoints",
                    ));
                }
                let cycle = self.sweep_cycle();
                if cycle == CycleKind::JouleBrayton && s.param != SweepParam::Rp && self.rp.is_none() {
                    return Err(Error::invalid("rp", f64::NAN, "a Joule-Brayton sweep needs --rp"));
                }
                if cycle == CycleKind::Otto && s.param != SweepParam::L3 && self.l3.is_none() {
                    return Err(Error::invalid("L3", f64::NAN, "an Otto sweep needs --L3"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn well(&self) -> Result<PtWell> {
        PtWell::new(self.mass, self.hbar, self.v0, self.l1)
    }

    fn sweep_cycle(&self) -> CycleKind {
        match self.sweep.map(|s| s.param) {
            Some(SweepParam::Rp) => CycleKind::JouleBrayton,
            Some(SweepParam::L3) => CycleKind::Otto,
            _ => self.cycle,
        }
    }
}

/// Outcome of one invocation: what goes to stdout, what goes to stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter { .. }
        | Error::TooManyLevels { .. }
        | Error::WrongStrokeKind { .. }
        | Error::Io(_)
        | Error::Json(_) => EXIT_USAGE,
        Error::Bracket { .. } | Error::Infeasible(_) => EXIT_INFEASIBLE,
        Error::NoConvergence { .. } => EXIT_VALIDATION,
    }
}

pub fn run(spec: &RunSpec) -> RunOutput {
    let mut diagnostics = Vec::new();
    let result = spec.validate().and_then(|()| match spec.command {
        Command::Spectrum => spectrum(spec),
        Command::Validate => checks(spec, validate_suite(spec.samples)?, &mut diagnostics),
        Command::Limits => checks(spec, limits_suite(spec.samples)?, &mut diagnostics),
        Command::Jb | Command::Otto => cycle(spec),
        Command::Sweep => sweep(spec, &mut diagnostics),
    });
    match result {
        Ok((code, stdout)) => RunOutput {
            code,
            stdout,
            stderr: diagnostics.iter().map(|d| format!("{d}\n")).collect(),
        },
        Err(e) => RunOutput {
            code: exit_code(&e),
            stdout: Vec::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub e_analytic: f64,
    pub e_oracle: f64,
    pub rel_err: f64,
    pub est_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub well: PtWell,
    pub params: SpectrumParams,
    pub grid_points_used: usize,
    pub rows: Vec<SpectrumRow>,
}

pub fn spectrum_report(well: &PtWell, n_max: usize) -> Result<SpectrumReport> {
    let oracle = solve_spectrum(well, &OracleConfig::with_levels(n_max + 1))?;
    let rows = oracle
        .levels
        .iter()
        .zip(&oracle.est_error)
        .enumerate()
        .map(|(n, (&e_oracle, &est_error))| {
            let e_analytic = energy_level(well, n as u32);
            SpectrumRow {
                n,
                e_analytic,
                e_oracle,
                rel_err: ((e_oracle - e_analytic) / e_analytic).abs(),
                est_error,
            }
        })
        .collect();
    Ok(SpectrumReport {
        well: *well,
        params: well.params(),
        grid_points_used: oracle.grid_points_used,
        rows,
    })
}

fn spectrum(spec: &RunSpec) -> Result<(i32, Vec<u8>)> {
    let report = spectrum_report(&spec.well()?, spec.n_max)?;
    let p = spec.precision;
    let bytes = match spec.format {
        Format::Json => to_json(&report, p)?,
        Format::Csv => {
            let mut csv = Csv::new(&["n", "e_analytic", "e_oracle", "rel_err"]);
            for r in &report.rows {
                csv.row([
                    r.n.to_string(),
                    csv_number(r.e_analytic, p),
                    csv_number(r.e_oracle, p),
                    csv_number(r.rel_err, p),
                ]);
            }
            csv.into_bytes()
        }
    };
    Ok((EXIT_OK, bytes))
}

fn checks(spec: &RunSpec, report: CheckReport, diagnostics: &mut Vec<String>) -> Result<(i32, Vec<u8>)> {
    let p = spec.precision;
    for c in report.checks.iter().filter(|c| !c.pass) {
        diagnostics.push(format!(
            "FAIL {}: error {:e} vs tolerance {:e}",
            c.name, c.error, c.tolerance
        ));
    }
    diagnostics.push(format!("{} passed, {} failed", report.passed, report.failed));
    let bytes = match spec.format {
        Format::Json => to_json(&report, p)?,
        Format::Csv => {
            let mut csv = Csv::new(&["name", "value", "reference", "error", "tolerance", "expect", "pass"]);
            for c in &report.checks {
                csv.row([
                    c.name.clone(),
                    csv_number(c.value, p),
                    csv_number(c.reference, p),
                    csv_number(c.error, p),
                    csv_number(c.tolerance, p),
                    match c.expect {
                        validate::Expect::Match => "match".to_string(),
                        validate::Expect::Differ => "differ".to_string(),
                    },
                    c.pass.to_string(),
                ]);
            }
            csv.into_bytes()
        }
    };
    let code = if report.all_pass() { EXIT_OK } else { EXIT_VALIDATION };
    Ok((code, bytes))
}

/// Both modes plus the discrepancy block for a `jb` or `otto` run.
pub fn comparison(spec: &RunSpec) -> Result<CycleComparison> {
    let well = spec.well()?;
    match spec.command {
        Command::Otto => compare_otto(&well, spec.l3.unwrap_or(f64::NAN), spec.samples),
        _ => compare_jb(&well, spec.rp.unwrap_or(f64::NAN), spec.samples),
    }
}

/// Stroke samples of one report, one row per sample.
pub fn strokes_csv(report: &CycleReport, precision: usize) -> Vec<u8> {
    let mut csv = Csv::new(&["stroke", "kind", "index", "length", "pressure", "energy", "w1"]);
    for (i, s) in report.strokes.iter().enumerate() {
        for (j, p) in s.samples.iter().enumerate() {
            csv.row([
                (i + 1).to_string(),
                s.kind.name().to_string(),
                j.to_string(),
                csv_number(p.length, precision),
                csv_number(p.pressure, precision),
                csv_number(p.energy, precision),
                csv_number(p.w1, precision),
            ]);
        }
    }
    csv.into_bytes()
}

fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Paper => "paper",
    }
}

fn cycle(spec: &RunSpec) -> Result<(i32, Vec<u8>)> {
    let c = comparison(spec)?;
    let p = spec.precision;
    let selected = c.report(spec.mode);
    if let Some(path) = &spec.svg {
        render_pl_svg(selected, path)?;
    }
    if let Some(path) = &spec.strokes_csv {
        std::fs::write(path, strokes_csv(selected, p))?;
    }
    let bytes = match spec.format {
        Format::Json => to_json(&c, p)?,
        Format::Csv => {
            let mut csv = Csv::new(&[
                "mode",
                "efficiency",
                "net_work",
                "q_hot",
                "q_cold",
                "loop_integral",
                "l1",
                "l2",
                "l3",
                "l4",
                "p1",
                "p2",
                "p3",
                "p4",
            ]);
            for r in [&c.exact, &c.paper] {
                let mut row = vec![
                    mode_label(r.mode).to_string(),
                    csv_number(r.efficiency, p),
                    csv_number(r.net_work, p),
                    csv_number(r.q_hot, p),
                    csv_number(r.q_cold, p),
                    csv_number(r.loop_integral, p),
                ];
                row.extend(r.corner_lengths.iter().map(|&x| csv_number(x, p)));
                row.extend(r.corner_pressures.iter().map(|&x| csv_number(x, p)));
                csv.row(row);
            }
            csv.into_bytes()
        }
    };
    Ok((EXIT_OK, bytes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub eta_exact: Option<f64>,
    pub eta_paper: Option<f64>,
    pub work: Option<f64>,
    pub q_hot: Option<f64>,
    pub q_cold: Option<f64>,
}

fn sweep_point(spec: &RunSpec, sweep: &SweepSpec, value: f64) -> (SweepRow, Vec<String>) {
    let (mut v0, mut l1, mut rp, mut l3) = (spec.v0, spec.l1, spec.rp, spec.l3);
    match sweep.param {
        SweepParam::V0 => v0 = value,
        SweepParam::L1 => l1 = value,
        SweepParam::Rp => rp = Some(value),
        SweepParam::L3 => l3 = Some(value),
    }
    let cycle = spec.sweep_cycle();
    let one = |mode: Mode| -> Result<CycleReport> {
        let well = PtWell::new(spec.mass, spec.hbar, v0, l1)?;
        match cycle {
            CycleKind::JouleBrayton => jb_cycle(&well, rp.unwrap_or(f64::NAN), mode, spec.samples),
            CycleKind::Otto => otto_cycle(&well, l3.unwrap_or(f64::NAN), mode, spec.samples),
        }
    };
    let mut notes = Vec::new();
    let mut keep = |mode: Mode| match one(mode) {
        Ok(r) => Some(r),
        Err(e) => {
            notes.push(format!(
                "{} mode at {} = {value}: {e}",
                mode_label(mode),
                param_name(sweep.param)
            ));
            None
        }
    };
    let exact = keep(Mode::Exact);
    let paper = keep(Mode::Paper);
    let selected = match spec.mode {
        Mode::Exact => exact.as_ref(),
        Mode::Paper => paper.as_ref(),
    };
    let row = SweepRow {
        param: value,
        eta_exact: exact.as_ref().map(|r| r.efficiency),
        eta_paper: paper.as_ref().map(|r| r.efficiency),
        work: selected.map(|r| r.net_work),
        q_hot: selected.map(|r| r.q_hot),
        q_cold: selected.map(|r| r.q_cold),
    };
    (row, notes)
}

pub fn param_name(p: SweepParam) -> &'static str {
    match p {
        SweepParam::V0 => "v0",
        SweepParam::L1 => "L1",
        SweepParam::Rp => "rp",
        SweepParam::L3 => "L3",
    }
}

/// Rows in parameter order; points evaluate in parallel.
pub fn sweep_rows(spec: &RunSpec) -> Result<(Vec<SweepRow>, Vec<String>)> {
    let sweep = spec
        .sweep
        .ok_or(Error::invalid("param", f64::NAN, "sweep needs --param"))?;
    let points: Vec<(SweepRow, Vec<String>)> = sweep
        .values()
        .par_iter()
        .map(|&v| sweep_point(spec, &sweep, v))
        .collect();
    let mut rows = Vec::with_capacity(points.len());
    let mut notes = Vec::new();
    for (row, n) in points {
        rows.push(row);
        notes.extend(n);
    }
    Ok((rows, notes))
}

fn sweep(spec: &RunSpec, diagnostics: &mut Vec<String>) -> Result<(i32, Vec<u8>)> {
    let (rows, notes) = sweep_rows(spec)?;
    let code = if notes.is_empty() { EXIT_OK } else { EXIT_INFEASIBLE };
    diagnostics.extend(notes);
    let p = spec.precision;
    let bytes = match spec.format {
        Format::Json => to_json(&rows, p)?,
        Format::Csv => {
            let mut csv = Csv::new(&["param", "eta_exact", "eta_paper", "work", "q_hot", "q_cold"]);
            for r in &rows {
                csv.row([
                    csv_number(r.param, p),
                    csv_optional(r.eta_exact, p),
                    csv_optional(r.eta_paper, p),
                    csv_optional(r.work, p),
                    csv_optional(r.q_hot, p),
                    csv_optional(r.q_cold, p),
                ]);
            }
            csv.into_bytes()
        }
    };
    Ok((code, bytes))
}

/// Parses a `jb`/`otto` JSON report back for round-trip checks.
pub fn read_comparison(bytes: &[u8]) -> Result<CycleComparison> {
    Ok(serde_json::from_slice(bytes)?)
}
