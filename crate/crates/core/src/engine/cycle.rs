//! Joule-Brayton and Otto cycles over the `n = 1, 2` pair.
//!
//! Exact mode builds every stroke from the closed-form spectrum with
//! `lambda(L)` following the width, finds corners by root finding and takes
//! work and heat from the strokes. Paper mode holds `lambda (1 - mu)` at a
//! reference width (the whole cycle at `L1` for Joule-Brayton, `L1` and `L3`
//! for the two halves of Otto) and reports the closed-form totals.

use serde::{Deserialize, Serialize};

use super::model::{ExactModel, FrozenModel, LevelModel};
use super::stroke::{adiabat, isobar, isochore, Stroke};
use crate::error::{Error, Result};
use crate::numerics::{find_root, grow_bracket};
use crate::well::PtWell;

/// Relative tolerance on corner widths.
pub const CORNER_REL_TOL: f64 = 1e-12;
pub const MIN_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    JouleBrayton,
    Otto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Paper,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub cycle: CycleKind,
    pub mode: Mode,
    pub strokes: Vec<Stroke>,
    /// `L1..L4`.
    pub corner_lengths: [f64; 4],
    /// Pressures at corners 1..4 (`P_A, P_A, P_B, P_B` for Joule-Brayton).
    pub corner_pressures: [f64; 4],
    pub net_work: f64,
    pub q_hot: f64,
    /// Released heat as a magnitude.
    pub q_cold: f64,
    pub efficiency: f64,
    /// Sum of the strokes' `P dL` quadratures.
    pub loop_integral: f64,
}

impl CycleReport {
    /// Gap between where the last stroke ends and the first begins, in
    /// width and lower-level weight.
    pub fn closure_gap(&self) -> (f64, f64) {
        let first = self.strokes[0].start();
        let last = self.strokes[self.strokes.len() - 1].end();
        ((last.length - first.length).abs(), (last.w1 - first.w1).abs())
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::invalid(
            "samples",
            samples as f64,
            "need at least 16 samples per stroke",
        ));
    }
    Ok(())
}

/// Root of a decreasing-in-width `f` above `start`.
fn corner<F: Fn(f64) -> f64>(f: F, start: f64, stroke: &'static str) -> Result<f64> {
    let (lo, hi) = grow_bracket(&f, start, 1.25, 400).ok_or(Error::Bracket { stroke })?;
    find_root(&f, lo, hi, CORNER_REL_TOL).ok_or(Error::Bracket { stroke })
}

fn totals(
    cycle: CycleKind,
    mode: Mode,
    strokes: Vec<Stroke>,
    corner_lengths: [f64; 4],
    corner_pressures: [f64; 4],
) -> Result<CycleReport> {
    let net_work: f64 = strokes.iter().map(|s| s.work).sum();
    let q_hot = strokes[0].heat;
    let q_cold = -strokes[2].heat;
    if !(q_hot > 0.0 && q_cold > 0.0) {
        return Err(Error::Infeasible(format!(
            "heat flows reversed: q_hot = {q_hot}, q_cold = {q_cold}"
        )));
    }
    let loop_integral = strokes.iter().map(|s| s.path_integral).sum();
    Ok(CycleReport {
        cycle,
        mode,
        strokes,
        corner_lengths,
        corner_pressures,
        net_work,
        q_hot,
        q_cold,
        efficiency: net_work / q_hot,
        loop_integral,
    })
}

fn jb_strokes<M: LevelModel>(model: &M, l: [f64; 4], pa: f64, pb: f64, samples: usize) -> Result<Vec<Stroke>> {
    Ok(vec![
        isobar(model, pa, l[0], l[1], samples, "hot isobar")?,
        adiabat(model, 2, l[1], l[2], samples),
        isobar(model, pb, l[2], l[3], samples, "cold isobar")?,
        adiabat(model, 1, l[3], l[0], samples),
    ])
}

/// Joule-Brayton cycle starting in the lower level at the well's width,
/// between pressures `P_A` and `P_A / pressure_ratio`.
pub fn jb_cycle(well: &PtWell, pressure_ratio: f64, mode: Mode, samples: usize) -> Result<CycleReport> {
    if !(pressure_ratio.is_finite() && pressure_ratio > 1.0) {
        return Err(Error::invalid("rp", pressure_ratio, "pressure ratio must exceed 1"));
    }
    check_samples(samples)?;
    match mode {
        Mode::Exact => jb_exact(well, pressure_ratio, samples),
        Mode::Paper => jb_paper(well, pressure_ratio, samples),
    }
}

fn jb_exact(well: &PtWell, rp: f64, samples: usize) -> Result<CycleReport> {
    let m = ExactModel { well: *well };
    let l1 = well.width();
    let pa = m.pressure(1, l1);
    let pb = pa / rp;
    let l2 = corner(|l| m.pressure(2, l) - pa, l1, "hot isobar")?;
    let l3 = corner(|l| m.pressure(2, l) - pb, l2, "expansion adiabat")?;
    let l4 = corner(|l| m.pressure(1, l) - pb, l1, "cold isobar")?;
    if !(l1 < l2 && l2 < l3 && l4 < l3 && l4 > l1) {
        return Err(Error::Infeasible(format!(
            "corners out of order: L1={l1} L2={l2} L3={l3} L4={l4}"
        )));
    }
    let corners = [l1, l2, l3, l4];
    let strokes = jb_strokes(&m, corners, pa, pb, samples)?;
    totals(CycleKind::JouleBrayton, Mode::Exact, strokes, corners, [pa, pa, pb, pb])
}

fn jb_paper(well: &PtWell, rp: f64, samples: usize) -> Result<CycleReport> {
    let m = FrozenModel::at_reference(well);
    let l1 = well.width();
    let pa = m.pressure(1, l1);
    let pb = pa / rp;
    // L^3 P is constant on each frozen level
    let l2 = l1 * (m.bracket(2) / m.bracket(1)).cbrt();
    let l3 = l2 * rp.cbrt();
    let l4 = l1 * rp.cbrt();
    let corners = [l1, l2, l3, l4];
    let strokes = jb_strokes(&m, corners, pa, pb, samples)?;
    let mut report = totals(CycleKind::JouleBrayton, Mode::Paper, strokes, corners, [pa, pa, pb, pb])?;
    // isobaric heat is three halves of the isobaric work when E = PL/2
    report.q_hot = 1.5 * pa * (l2 - l1);
    report.q_cold = 1.5 * pb * (l3 - l4);
    report.net_work =
        pa * (l2 - l1) + (m.energy(2, l2) - m.energy(2, l3)) + pb * (l4 - l3) + (m.energy(1, l4) - m.energy(1, l1));
    report.efficiency = report.net_work / report.q_hot;
    Ok(report)
}

fn otto_strokes<H: LevelModel, C: LevelModel>(hot: &H, cold: &C, l1: f64, l3: f64, samples: usize) -> Vec<Stroke> {
    vec![
        isochore(hot, l1, 1.0, 0.0, samples),
        adiabat(hot, 2, l1, l3, samples),
        isochore(cold, l3, 0.0, 1.0, samples),
        adiabat(cold, 1, l3, l1, samples),
    ]
}

fn otto_corner_pressures<H: LevelModel, C: LevelModel>(hot: &H, cold: &C, l1: f64, l3: f64) -> [f64; 4] {
    [
        hot.pressure(1, l1),
        hot.pressure(2, l1),
        cold.pressure(2, l3),
        cold.pressure(1, l3),
    ]
}

/// Otto cycle with isochores at the well's width and at `l3`.
pub fn otto_cycle(well: &PtWell, l3: f64, mode: Mode, samples: usize) -> Result<CycleReport> {
    let l1 = well.width();
    if !(l3.is_finite() && l3 > l1) {
        return Err(Error::invalid("L3", l3, "compressed width must exceed L1"));
    }
    check_samples(samples)?;
    let corners = [l1, l1, l3, l3];
    match mode {
        Mode::Exact => {
            let m = ExactModel { well: *well };
            let strokes = otto_strokes(&m, &m, l1, l3, samples);
            totals(
                CycleKind::Otto,
                Mode::Exact,
                strokes,
                corners,
                otto_corner_pressures(&m, &m, l1, l3),
            )
        }
        Mode::Paper => {
            let far = well.with_width(l3)?;
            let hot = FrozenModel::at_reference(well);
            let cold = FrozenModel::at_reference(&far);
            let strokes = otto_strokes(&hot, &cold, l1, l3, samples);
            let pressures = otto_corner_pressures(&hot, &cold, l1, l3);
            let mut report = totals(CycleKind::Otto, Mode::Paper, strokes, corners, pressures)?;
            let closed = OttoClosedForms::new(well, &far);
            if !closed.efficiency_compression_ratio.is_finite() {
                return Err(Error::Infeasible(
                    "closed-form Otto efficiency is singular at 5 lambda (1 - mu) = 3".into(),
                ));
            }
            report.q_hot = closed.heat_in;
            report.efficiency = closed.efficiency_compression_ratio;
            report.net_work = report.efficiency * report.q_hot;
            report.q_cold = report.q_hot - report.net_work;
            Ok(report)
        }
    }
}

/// The Otto closed forms, with `lambda (1 - mu)` taken at `L1` for the hot
/// isochore and at `L3` for the cold one.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OttoClosedForms {
    pub a_hot: f64,
    pub a_cold: f64,
    /// `(W(L1) / 2) [3 + 5 a_hot]`.
    pub heat_in: f64,
    /// `-2 W(L3) [1 - 3 a_cold]`, sign as written.
    pub heat_out: f64,
    /// `1 - (1 / R_L) [3 a_cold - 3] / [5 a_hot - 3]`.
    pub efficiency_compression_ratio: f64,
    /// Same bracket with the `(L1 / L3)^2` prefactor.
    pub efficiency_squared_ratio: f64,
    /// `1 - 1 / R_L`.
    pub efficiency_box_limit: f64,
}

impl OttoClosedForms {
    pub fn new(hot: &PtWell, cold: &PtWell) -> Self {
        let ph = hot.params();
        let pc = cold.params();
        let a_hot = ph.stiffness_factor();
        let a_cold = pc.stiffness_factor();
        let rl = cold.width() / hot.width();
        let bracket = (3.0 * a_cold - 3.0) / (5.0 * a_hot - 3.0);
        Self {
            a_hot,
            a_cold,
            heat_in: 0.5 * ph.w * (3.0 + 5.0 * a_hot),
            heat_out: -2.0 * pc.w * (1.0 - 3.0 * a_cold),
            efficiency_compression_ratio: 1.0 - bracket / rl,
            efficiency_squared_ratio: 1.0 - bracket / (rl * rl),
            efficiency_box_limit: 1.0 - 1.0 / rl,
        }
    }
}
