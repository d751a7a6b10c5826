use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::well::{bracket_pressure, derive_params, energy_level, pressure_exact, PtWell};

/// Allowed drift of `w1 + w2` from one.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Populations of the two working levels `n = 1` and `n = 2`. Relative
/// phases never enter energies or pressures, so only weights are kept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelState {
    pub w1: f64,
    pub w2: f64,
}

impl TwoLevelState {
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        for (name, w) in [("w1", w1), ("w2", w2)] {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::invalid(name, w, "weight must lie in [0, 1]"));
            }
        }
        if (w1 + w2 - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid("w1 + w2", w1 + w2, "weights must sum to one"));
        }
        Ok(Self { w1, w2 })
    }

    /// The state with weight `w1` on the lower level and the rest on the upper.
    pub fn from_lower(w1: f64) -> Result<Self> {
        Self::new(w1, 1.0 - w1)
    }

    pub fn lower() -> Self {
        Self { w1: 1.0, w2: 0.0 }
    }

    pub fn upper() -> Self {
        Self { w1: 0.0, w2: 1.0 }
    }
}

/// Which pressure formula a mixture uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PressureVariant {
    /// `(2W/L) [n^2 + (2n + 1) lambda (1 - mu)]` as written.
    Paper,
    /// `-dE_n/dL`.
    Exact,
}

pub fn mixture_energy(well: &PtWell, s: TwoLevelState) -> f64 {
    s.w1 * energy_level(well, 1) + s.w2 * energy_level(well, 2)
}

/// Weighted level pressures; Hellmann-Feynman is linear at fixed weights.
pub fn mixture_pressure(well: &PtWell, s: TwoLevelState, variant: PressureVariant) -> f64 {
    let (p1, p2) = match variant {
        PressureVariant::Exact => (pressure_exact(well, 1), pressure_exact(well, 2)),
        PressureVariant::Paper => {
            let p = derive_params(well);
            let a = p.stiffness_factor();
            (
                bracket_pressure(p.w, well.width(), 1, a),
                bracket_pressure(p.w, well.width(), 2, a),
            )
        }
    };
    s.w1 * p1 + s.w2 * p2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::well::pressure_paper;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn lambda2() -> PtWell {
        PtWell::new(PI * PI, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn state_validation() {
        assert!(TwoLevelState::new(0.3, 0.7).is_ok());
        assert!(TwoLevelState::new(0.3, 0.6).is_err());
        assert!(TwoLevelState::new(-0.1, 1.1).is_err());
        assert!(TwoLevelState::from_lower(f64::NAN).is_err());
    }

    #[test]
    fn pure_state_energies() {
        let well = lambda2();
        let p = well.params();
        assert_relative_eq!(
            mixture_energy(&well, TwoLevelState::lower()),
            p.w * (1.0 + 3.0 * p.lambda)
        );
        assert_relative_eq!(
            mixture_energy(&well, TwoLevelState::upper()),
            p.w * (4.0 + 5.0 * p.lambda)
        );
    }

    #[test]
    fn weights_route_matches_expanded_form() {
        let well = lambda2();
        let s = TwoLevelState::from_lower(0.5).unwrap();
        let by_weights = mixture_energy(&well, s);
        // W [4 + 5 lambda - (3 + 2 lambda) |a1|^2]
        let expanded = 0.5 * (4.0 + 10.0 - (3.0 + 4.0) * 0.5);
        assert_relative_eq!(by_weights, 5.25, max_relative = 1e-12);
        assert_relative_eq!(by_weights, expanded, max_relative = 1e-12);
        // and the compression-side form W [1 + 3 lambda + (3 + 2 lambda) |b2|^2]
        let compression = 0.5 * (1.0 + 6.0 + 7.0 * s.w2);
        assert_relative_eq!(by_weights, compression, max_relative = 1e-12);
    }

    #[test]
    fn mixture_pressure_examples() {
        let boxed = PtWell::natural(0.0, PI).unwrap();
        assert_relative_eq!(
            mixture_pressure(&boxed, TwoLevelState::lower(), PressureVariant::Exact),
            4.0 / PI,
            max_relative = 1e-15
        );
        let well = lambda2();
        assert_relative_eq!(
            mixture_pressure(&well, TwoLevelState::lower(), PressureVariant::Paper),
            3.0,
            max_relative = 1e-14
        );
        let half = TwoLevelState::from_lower(0.5).unwrap();
        for variant in [PressureVariant::Paper, PressureVariant::Exact] {
            let mean = 0.5
                * (mixture_pressure(&well, TwoLevelState::lower(), variant)
                    + mixture_pressure(&well, TwoLevelState::upper(), variant));
            assert_relative_eq!(mixture_pressure(&well, half, variant), mean, max_relative = 1e-14);
        }
        assert_relative_eq!(
            mixture_pressure(&well, TwoLevelState::upper(), PressureVariant::Paper),
            pressure_paper(&well, 2).unwrap()
        );
    }
}
