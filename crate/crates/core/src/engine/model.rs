//! Level energies and pressures as functions of the width, in the two
//! flavours the cycles are built from.

use crate::well::{energy_level, pressure_exact, PtWell};

pub trait LevelModel {
    fn energy(&self, n: u32, width: f64) -> f64;
    fn pressure(&self, n: u32, width: f64) -> f64;

    fn mixture_energy(&self, w1: f64, width: f64) -> f64 {
        w1 * self.energy(1, width) + (1.0 - w1) * self.energy(2, width)
    }

    fn mixture_pressure(&self, w1: f64, width: f64) -> f64 {
        w1 * self.pressure(1, width) + (1.0 - w1) * self.pressure(2, width)
    }

    /// Lower-level weight that holds the mixture at pressure `p`; not clamped.
    fn isobaric_weight(&self, p: f64, width: f64) -> f64 {
        let p1 = self.pressure(1, width);
        let p2 = self.pressure(2, width);
        (p - p2) / (p1 - p2)
    }
}

/// The closed-form spectrum with `lambda` following the width.
#[derive(Debug, Clone, Copy)]
pub struct ExactModel {
    pub well: PtWell,
}

impl ExactModel {
    fn at(&self, width: f64) -> PtWell {
        // widths come from root brackets on a valid well and stay positive
        self.well.with_width(width).expect("width stays positive and finite")
    }
}

impl LevelModel for ExactModel {
    fn energy(&self, n: u32, width: f64) -> f64 {
        energy_level(&self.at(width), n)
    }

    fn pressure(&self, n: u32, width: f64) -> f64 {
        pressure_exact(&self.at(width), n)
    }
}

/// `lambda (1 - mu)` held at a reference width, with energies tied to the
/// pressure by `P = 2E/L`: `E_n = (k / L^2) [n^2 + (2n + 1) a]`,
/// `k = pi^2 hbar^2 / 2m`. Along a pure-level stroke `L^3 P` is constant.
#[derive(Debug, Clone, Copy)]
pub struct FrozenModel {
    pub kinetic_scale: f64,
    pub stiffness: f64,
}

impl FrozenModel {
    pub fn at_reference(well: &PtWell) -> Self {
        Self {
            kinetic_scale: well.kinetic_scale(),
            stiffness: well.params().stiffness_factor(),
        }
    }

    /// `n^2 + (2n + 1) a`.
    pub fn bracket(&self, n: u32) -> f64 {
        let n = f64::from(n);
        n * n + (2.0 * n + 1.0) * self.stiffness
    }
}

impl LevelModel for FrozenModel {
    fn energy(&self, n: u32, width: f64) -> f64 {
        self.kinetic_scale * self.bracket(n) / (width * width)
    }

    fn pressure(&self, n: u32, width: f64) -> f64 {
        2.0 * self.kinetic_scale * self.bracket(n) / (width * width * width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::central_difference;
    use crate::well::pressure_paper;
    use approx::assert_relative_eq;

    #[test]
    fn frozen_pressure_matches_closed_form_at_reference() {
        let well = PtWell::natural(30.0, 1.3).unwrap();
        let m = FrozenModel::at_reference(&well);
        for n in 1..=3 {
            assert_relative_eq!(
                m.pressure(n, 1.3),
                pressure_paper(&well, n).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn both_models_are_hellmann_feynman() {
        let well = PtWell::natural(30.0, 1.3).unwrap();
        let exact = ExactModel { well };
        let frozen = FrozenModel::at_reference(&well);
        for n in 1..=2 {
            for l in [0.9, 1.3, 2.5] {
                let fd = -central_difference(|x| exact.energy(n, x), l, 1e-6);
                assert_relative_eq!(exact.pressure(n, l), fd, max_relative = 1e-7);
                let fd = -central_difference(|x| frozen.energy(n, x), l, 1e-6);
                assert_relative_eq!(frozen.pressure(n, l), fd, max_relative = 1e-7);
            }
        }
    }

    #[test]
    fn isobaric_weight_endpoints() {
        let well = PtWell::natural(5.0, 1.0).unwrap();
        let m = ExactModel { well };
        let p = m.pressure(1, 1.0);
        assert_relative_eq!(m.isobaric_weight(p, 1.0), 1.0, max_relative = 1e-14);
        let q = m.pressure(2, 1.0);
        assert!(m.isobaric_weight(q, 1.0).abs() < 1e-14);
    }
}
