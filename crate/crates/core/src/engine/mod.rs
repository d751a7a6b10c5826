//! Two-level working medium, strokes and the cycles built from them.

pub mod compare;
pub mod cycle;
pub mod model;
pub mod state;
pub mod stroke;

pub use compare::{compare_jb, compare_otto, CycleComparison, CycleInputs, Discrepancy};
pub use cycle::{jb_cycle, otto_cycle, CycleKind, CycleReport, Mode};
pub use state::{mixture_energy, mixture_pressure, PressureVariant, TwoLevelState};
pub use stroke::{adiabatic_invariant, Sample, Stroke, StrokeKind};
