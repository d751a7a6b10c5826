use serde::{Deserialize, Serialize};

use super::model::LevelModel;
use crate::error::{Error, Result};
use crate::numerics::adaptive_simpson;

/// How far an isobaric weight may stray outside `[0, 1]` before the path is
/// rejected.
pub const WEIGHT_TOL: f64 = 1e-9;
/// Quadrature tolerance relative to the stroke's energy scale.
pub const QUAD_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrokeKind {
    Isobaric,
    Isochoric,
    Adiabatic,
}

impl StrokeKind {
    pub fn name(self) -> &'static str {
        match self {
            StrokeKind::Isobaric => "isobaric",
            StrokeKind::Isochoric => "isochoric",
            StrokeKind::Adiabatic => "adiabatic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub length: f64,
    pub pressure: f64,
    pub energy: f64,
    pub w1: f64,
}

/// One leg of a cycle. `work` is done by the medium (positive on
/// expansion); `heat` is absorbed (positive) or released (negative).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stroke {
    pub kind: StrokeKind,
    /// Quantum number held fixed on an adiabat; `None` when the weights move.
    pub level: Option<u32>,
    pub samples: Vec<Sample>,
    pub work: f64,
    pub heat: f64,
    /// Quadrature of `P dL` along the stroke, independent of `work`.
    pub path_integral: f64,
}

impl Stroke {
    pub fn start(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn end(&self) -> &Sample {
        &self.samples[self.samples.len() - 1]
    }
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { b } else { a + step * i as f64 })
}

fn quad_tol<M: LevelModel>(model: &M, a: f64, b: f64) -> f64 {
    let scale = model.energy(2, a).abs().max(model.energy(2, b).abs());
    QUAD_REL_TOL * scale
}

fn weight_in_range(w: f64, what: &str, length: f64) -> Result<f64> {
    if !(-WEIGHT_TOL..=1.0 + WEIGHT_TOL).contains(&w) || !w.is_finite() {
        return Err(Error::Infeasible(format!(
            "{what}: isobaric weight w1 = {w} leaves [0, 1] at L = {length}"
        )));
    }
    Ok(w.clamp(0.0, 1.0))
}

/// Constant-pressure leg from `from` to `to`; the lower-level weight follows
/// whatever keeps the mixture at `pressure`.
pub fn isobar<M: LevelModel>(
    model: &M,
    pressure: f64,
    from: f64,
    to: f64,
    samples: usize,
    what: &str,
) -> Result<Stroke> {
    let pts = linspace(from, to, samples)
        .map(|l| {
            let w1 = weight_in_range(model.isobaric_weight(pressure, l), what, l)?;
            Ok(Sample {
                length: l,
                pressure: model.mixture_pressure(w1, l),
                energy: model.mixture_energy(w1, l),
                w1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let work = pressure * (to - from);
    let de = pts[pts.len() - 1].energy - pts[0].energy;
    let path_integral = adaptive_simpson(
        |l| model.mixture_pressure(model.isobaric_weight(pressure, l).clamp(0.0, 1.0), l),
        from,
        to,
        quad_tol(model, from, to),
    );
    Ok(Stroke {
        kind: StrokeKind::Isobaric,
        level: None,
        samples: pts,
        work,
        heat: de + work,
        path_integral,
    })
}

/// Fixed-width leg moving the lower-level weight linearly from `w_from` to `w_to`.
pub fn isochore<M: LevelModel>(model: &M, length: f64, w_from: f64, w_to: f64, samples: usize) -> Stroke {
    let pts: Vec<Sample> = linspace(w_from, w_to, samples)
        .map(|w1| Sample {
            length,
            pressure: model.mixture_pressure(w1, length),
            energy: model.mixture_energy(w1, length),
            w1,
        })
        .collect();
    let heat = pts[pts.len() - 1].energy - pts[0].energy;
    Stroke {
        kind: StrokeKind::Isochoric,
        level: None,
        samples: pts,
        work: 0.0,
        heat,
        path_integral: 0.0,
    }
}

/// Width change with the particle locked in level `n`.
pub fn adiabat<M: LevelModel>(model: &M, n: u32, from: f64, to: f64, samples: usize) -> Stroke {
    let w1 = if n == 1 { 1.0 } else { 0.0 };
    let pts: Vec<Sample> = linspace(from, to, samples)
        .map(|l| Sample {
            length: l,
            pressure: model.pressure(n, l),
            energy: model.energy(n, l),
            w1,
        })
        .collect();
    let work = model.energy(n, from) - model.energy(n, to);
    let path_integral = adaptive_simpson(|l| model.pressure(n, l), from, to, quad_tol(model, from, to));
    Stroke {
        kind: StrokeKind::Adiabatic,
        level: Some(n),
        samples: pts,
        work,
        heat: 0.0,
        path_integral,
    }
}

/// Largest relative drift of `L^3 P` from its value at the stroke's start.
pub fn adiabatic_invariant(stroke: &Stroke) -> Result<f64> {
    if stroke.kind != StrokeKind::Adiabatic {
        return Err(Error::WrongStrokeKind {
            expected: StrokeKind::Adiabatic.name(),
            got: stroke.kind.name(),
        });
    }
    let invariant = |s: &Sample| s.length.powi(3) * s.pressure;
    let reference = invariant(stroke.start());
    Ok(stroke
        .samples
        .iter()
        .map(|s| ((invariant(s) - reference) / reference).abs())
        .fold(0.0, f64::max))
}
