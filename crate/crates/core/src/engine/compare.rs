use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cycle::{jb_cycle, otto_cycle, CycleKind, CycleReport, Mode, OttoClosedForms};
use super::model::{FrozenModel, LevelModel};
use crate::error::Result;
use crate::well::PtWell;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleInputs {
    pub mass: f64,
    pub hbar: f64,
    pub v0: f64,
    pub l1: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rp: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l3: Option<f64>,
    pub samples: usize,
}

/// Where the two modes part ways, plus the closed-form values paper mode
/// is built from and the ones it contradicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub eta_exact: f64,
    pub eta_paper: f64,
    /// `eta_paper - eta_exact`.
    pub delta: f64,
    pub eta_paper_in_unit_interval: bool,
    pub closed_forms: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleComparison {
    pub cycle: CycleKind,
    pub inputs: CycleInputs,
    pub exact: CycleReport,
    pub paper: CycleReport,
    pub discrepancy: Discrepancy,
}

impl CycleComparison {
    pub fn report(&self, mode: Mode) -> &CycleReport {
        match mode {
            Mode::Exact => &self.exact,
            Mode::Paper => &self.paper,
        }
    }
}

fn inputs(well: &PtWell, rp: Option<f64>, l3: Option<f64>, samples: usize) -> CycleInputs {
    CycleInputs {
        mass: well.mass(),
        hbar: well.hbar(),
        v0: well.v0(),
        l1: well.width(),
        rp,
        l3,
        samples,
    }
}

fn discrepancy(exact: &CycleReport, paper: &CycleReport, closed_forms: BTreeMap<String, f64>) -> Discrepancy {
    Discrepancy {
        eta_exact: exact.efficiency,
        eta_paper: paper.efficiency,
        delta: paper.efficiency - exact.efficiency,
        eta_paper_in_unit_interval: paper.efficiency > 0.0 && paper.efficiency < 1.0,
        closed_forms,
    }
}

pub fn compare_jb(well: &PtWell, pressure_ratio: f64, samples: usize) -> Result<CycleComparison> {
    let exact = jb_cycle(well, pressure_ratio, Mode::Exact, samples)?;
    let paper = jb_cycle(well, pressure_ratio, Mode::Paper, samples)?;
    let frozen = FrozenModel::at_reference(well);
    let a = frozen.stiffness;
    let w1 = well.params().w;
    let l1 = well.width();
    let [_, l2, l3, _] = paper.corner_lengths;
    let [pa, _, pb, _] = paper.corner_pressures;
    let forms = BTreeMap::from([
        (
            "efficiency_pressure_ratio".to_string(),
            1.0 - pressure_ratio.powf(-2.0 / 3.0),
        ),
        ("efficiency_corner_ratio".to_string(), 1.0 - (pb / pa) * l3 / l2),
        (
            "efficiency_box_limit".to_string(),
            1.0 - 4f64.powf(-1.0 / 3.0) * (pb * l3) / (pa * l1),
        ),
        ("hot_pressure_unbracketed".to_string(), 2.0 * w1 / l1),
        ("hot_pressure_bracketed".to_string(), frozen.pressure(1, l1)),
        ("expansion_length_linear".to_string(), l1 * (4.0 + 5.0 * a)),
        ("heat_in_linear".to_string(), 1.5 * pa * l1 * (3.0 + 5.0 * a)),
        ("stiffness_factor".to_string(), a),
    ]);
    let discrepancy = discrepancy(&exact, &paper, forms);
    Ok(CycleComparison {
        cycle: CycleKind::JouleBrayton,
        inputs: inputs(well, Some(pressure_ratio), None, samples),
        exact,
        paper,
        discrepancy,
    })
}

pub fn compare_otto(well: &PtWell, l3: f64, samples: usize) -> Result<CycleComparison> {
    let exact = otto_cycle(well, l3, Mode::Exact, samples)?;
    let paper = otto_cycle(well, l3, Mode::Paper, samples)?;
    let c = OttoClosedForms::new(well, &well.with_width(l3)?);
    let forms = BTreeMap::from([
        (
            "efficiency_compression_ratio".to_string(),
            c.efficiency_compression_ratio,
        ),
        ("efficiency_squared_ratio".to_string(), c.efficiency_squared_ratio),
        ("efficiency_box_limit".to_string(), c.efficiency_box_limit),
        ("efficiency_from_heats".to_string(), 1.0 - c.heat_out.abs() / c.heat_in),
        ("heat_in_closed_form".to_string(), c.heat_in),
        ("heat_out_closed_form".to_string(), c.heat_out),
        ("stiffness_factor_hot".to_string(), c.a_hot),
        ("stiffness_factor_cold".to_string(), c.a_cold),
    ]);
    let discrepancy = discrepancy(&exact, &paper, forms);
    Ok(CycleComparison {
        cycle: CycleKind::Otto,
        inputs: inputs(well, None, Some(l3), samples),
        exact,
        paper,
        discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn box_jb_closed_forms_agree() {
        let well = PtWell::natural(0.0, 1.0).unwrap();
        for rp in [2.0, 4.0, 8.0] {
            let c = compare_jb(&well, rp, 32).unwrap();
            let target = 1.0 - rp.powf(-2.0 / 3.0);
            let f = &c.discrepancy.closed_forms;
            assert_relative_eq!(c.discrepancy.eta_exact, target, max_relative = 1e-9);
            assert_relative_eq!(c.discrepancy.eta_paper, target, max_relative = 1e-14);
            assert_relative_eq!(f["efficiency_box_limit"], target, max_relative = 1e-14);
            assert_relative_eq!(f["efficiency_corner_ratio"], target, max_relative = 1e-14);
            assert_eq!(f["hot_pressure_unbracketed"], f["hot_pressure_bracketed"]);
        }
    }

    #[test]
    fn box_otto_flags_exponent() {
        let well = PtWell::natural(0.0, 1.0).unwrap();
        let c = compare_otto(&well, 2.0, 32).unwrap();
        assert_relative_eq!(c.discrepancy.eta_exact, 0.75, max_relative = 1e-9);
        assert_relative_eq!(c.discrepancy.eta_paper, 0.5, max_relative = 1e-15);
        assert_relative_eq!(c.discrepancy.delta, -0.25, max_relative = 1e-9);
        assert_relative_eq!(
            c.discrepancy.closed_forms["efficiency_squared_ratio"],
            0.75,
            max_relative = 1e-15
        );
        assert!(c.discrepancy.eta_paper_in_unit_interval);
    }

    #[test]
    fn stiff_jb_modes_differ() {
        let well = PtWell::with_lambda(1.0, 1.0, 2.0, 1.0).unwrap();
        let c = compare_jb(&well, 8.0, 32).unwrap();
        assert!(c.discrepancy.delta.abs() > 0.0);
        assert_eq!(c.inputs.rp, Some(8.0));
        assert!(c.inputs.l3.is_none());
    }
}
