//! Brute-force check of the closed-form spectrum: the stationary
//! Schrodinger equation for `V0 tan^2(pi x / L)` on a uniform grid with a
//! three-point stencil, solved by Sturm bisection and optionally
//! Richardson-extrapolated over two spacings.
//!
//! Nothing here reads the closed-form spectrum; only [`PtWell::potential`]
//! and the particle constants enter.

pub mod tridiag;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::well::PtWell;
use tridiag::{bisect_eigenvalue, LaplacianPlusDiagonal};

/// Relative bisection tolerance on each eigenvalue.
pub const EIGEN_REL_TOL: f64 = 1e-12;
/// Relative width step for [`numerical_pressure`].
pub const PRESSURE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Interior nodes of the coarse grid.
    pub grid_points: usize,
    /// Fraction of `L/2` cut away at each singular wall.
    pub wall_inset: f64,
    pub richardson: bool,
    pub n_levels: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid_points: 4096,
            wall_inset: 1e-12,
            richardson: true,
            n_levels: 6,
        }
    }
}

impl OracleConfig {
    pub fn with_levels(n_levels: usize) -> Self {
        Self {
            n_levels,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 64 {
            return Err(Error::invalid("grid_points", self.grid_points as f64, "must be >= 64"));
        }
        if !(self.wall_inset > 0.0 && self.wall_inset <= 1e-3) {
            return Err(Error::invalid("wall_inset", self.wall_inset, "must lie in (0, 1e-3]"));
        }
        if self.n_levels < 1 {
            return Err(Error::invalid("n_levels", self.n_levels as f64, "must be >= 1"));
        }
        if self.n_levels > self.grid_points / 8 {
            return Err(Error::TooManyLevels {
                requested: self.n_levels,
                max: self.grid_points / 8,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSpectrum {
    pub levels: Vec<f64>,
    pub grid_points_used: usize,
    pub est_error: Vec<f64>,
}

/// Lowest `cfg.n_levels` eigenvalues on a grid of `interior` nodes.
fn grid_levels(well: &PtWell, cfg: &OracleConfig, interior: usize) -> Result<Vec<f64>> {
    let half = 0.5 * well.width() * (1.0 - cfg.wall_inset);
    let h = 2.0 * half / (interior + 1) as f64;
    let coupling = well.hbar() * well.hbar() / (2.0 * well.mass() * h * h);
    let potential = (1..=interior).map(|i| well.potential(-half + h * i as f64)).collect();
    let matrix = LaplacianPlusDiagonal { coupling, potential };
    let (glo, ghi) = matrix.gershgorin();
    let bounds = (glo.min(0.0), ghi);
    (0..cfg.n_levels)
        .into_par_iter()
        .map(|k| {
            bisect_eigenvalue(|s| matrix.sturm_count(s), k, bounds, EIGEN_REL_TOL, 400)
                .ok_or(Error::NoConvergence { level: k })
        })
        .collect()
}

pub fn solve_spectrum(well: &PtWell, cfg: &OracleConfig) -> Result<OracleSpectrum> {
    cfg.validate()?;
    let n = cfg.grid_points;
    let coarse = grid_levels(well, cfg, n)?;
    if cfg.richardson {
        // twice the intervals: exactly half the spacing
        let fine_points = 2 * n + 1;
        let fine = grid_levels(well, cfg, fine_points)?;
        let levels = coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
        let est_error = coarse.iter().zip(&fine).map(|(c, f)| (f - c).abs() / 3.0).collect();
        check_ascending(OracleSpectrum {
            levels,
            grid_points_used: fine_points,
            est_error,
        })
    } else {
        // error of the N-point value estimated against half as many intervals
        let rough_points = n.div_ceil(2) - 1;
        let rough = grid_levels(well, cfg, rough_points)?;
        let r = (n + 1) as f64 / (rough_points + 1) as f64;
        let est_error = coarse
            .iter()
            .zip(&rough)
            .map(|(c, g)| (c - g).abs() / (r * r - 1.0))
            .collect();
        check_ascending(OracleSpectrum {
            levels: coarse,
            grid_points_used: n,
            est_error,
        })
    }
}

fn check_ascending(spectrum: OracleSpectrum) -> Result<OracleSpectrum> {
    if let Some(k) = spectrum.levels.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NoConvergence { level: k + 1 });
    }
    Ok(spectrum)
}

/// `-dE_n/dL` from a central difference of the grid spectrum, step
/// `1e-5 L`, at fixed depth `V0`.
pub fn numerical_pressure(well: &PtWell, n: usize, cfg: &OracleConfig) -> Result<f64> {
    if n >= cfg.n_levels {
        return Err(Error::TooManyLevels {
            requested: n + 1,
            max: cfg.n_levels,
        });
    }
    Ok(numerical_pressures(well, cfg)?[n])
}

/// [`numerical_pressure`] for every level in `cfg` from one pair of solves.
pub fn numerical_pressures(well: &PtWell, cfg: &OracleConfig) -> Result<Vec<f64>> {
    let l = well.width();
    let h = PRESSURE_STEP * l;
    let up = solve_spectrum(&well.with_width(l + h)?, cfg)?;
    let dn = solve_spectrum(&well.with_width(l - h)?, cfg)?;
    Ok(up
        .levels
        .iter()
        .zip(&dn.levels)
        .map(|(u, d)| -(u - d) / (2.0 * h))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn small(n_levels: usize) -> OracleConfig {
        OracleConfig {
            grid_points: 1024,
            n_levels,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::default().validate().is_ok());
        let bad = |f: fn(&mut OracleConfig)| {
            let mut c = OracleConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.grid_points = 63));
        assert!(bad(|c| c.wall_inset = 0.0));
        assert!(bad(|c| c.wall_inset = 2e-3));
        assert!(bad(|c| c.n_levels = 0));
        assert!(matches!(
            OracleConfig {
                grid_points: 64,
                n_levels: 9,
                ..Default::default()
            }
            .validate(),
            Err(Error::TooManyLevels { requested: 9, max: 8 })
        ));
    }

    #[test]
    fn box_levels() {
        let well = PtWell::natural(0.0, PI).unwrap();
        let s = solve_spectrum(&well, &small(3)).unwrap();
        for (e, k) in s.levels.iter().zip(1..) {
            let exact = 0.5 * f64::from(k * k);
            assert_relative_eq!(*e, exact, max_relative = 1e-8);
        }
        assert_eq!(s.grid_points_used, 2049);
        assert!(s.est_error.iter().all(|e| e.is_finite() && *e >= 0.0));
    }

    #[test]
    fn lambda_two_levels() {
        // m = pi^2, v0 = 1 at L = 1 gives lambda = 2, W = 0.5
        let well = PtWell::new(PI * PI, 1.0, 1.0, 1.0).unwrap();
        let s = solve_spectrum(&well, &OracleConfig::with_levels(3)).unwrap();
        for (e, exact) in s.levels.iter().zip([1.0, 3.5, 7.0]) {
            assert_relative_eq!(*e, exact, max_relative = 1e-6);
        }
    }

    #[test]
    fn unextrapolated_error_estimate_is_honest() {
        let well = PtWell::natural(0.0, PI).unwrap();
        let cfg = OracleConfig {
            richardson: false,
            ..small(4)
        };
        let s = solve_spectrum(&well, &cfg).unwrap();
        assert_eq!(s.grid_points_used, 1024);
        for (k, (e, est)) in s.levels.iter().zip(&s.est_error).enumerate() {
            let exact = 0.5 * ((k + 1) * (k + 1)) as f64;
            let err = (e - exact).abs();
            assert!(err > 0.5 * est && err < 2.0 * est, "k={k} err={err} est={est}");
        }
    }

    #[test]
    fn second_order_convergence() {
        // halving the spacing cuts the raw error by ~4
        for lambda in [1.0, 2.0, 5.0] {
            let well = PtWell::with_lambda(1.0, 1.0, lambda, 1.0).unwrap();
            let coarse = OracleConfig {
                grid_points: 255,
                richardson: false,
                ..small(4)
            };
            let fine = OracleConfig {
                grid_points: 511,
                ..coarse
            };
            let a = solve_spectrum(&well, &coarse).unwrap();
            let b = solve_spectrum(&well, &fine).unwrap();
            for n in 0..4u32 {
                let exact = crate::well::energy_level(&well, n);
                let ratio = (a.levels[n as usize] - exact).abs() / (b.levels[n as usize] - exact).abs();
                assert!((3.5..=4.5).contains(&ratio), "lambda {lambda} n {n} ratio {ratio}");
            }
        }
    }

    #[test]
    fn harmonic_gap() {
        // D = 1e4; the lowest gap is W (1 + 2 lambda) = 1.0100125 hbar omega
        let well = PtWell::natural(1e4 * PI * PI / 2.0, 1.0).unwrap();
        let s = solve_spectrum(&well, &OracleConfig::with_levels(2)).unwrap();
        let gap = s.levels[1] - s.levels[0];
        let hw = well.harmonic_omega();
        let lambda = well.params().lambda;
        assert_relative_eq!(gap / hw, (1.0 + 2.0 * lambda) / 200.0, max_relative = 1e-6);
    }

    #[test]
    fn pressures() {
        let boxed = PtWell::natural(0.0, PI).unwrap();
        let cfg = small(2);
        let p = numerical_pressures(&boxed, &cfg).unwrap();
        let e0 = solve_spectrum(&boxed, &cfg).unwrap().levels[0];
        assert_relative_eq!(p[0], 2.0 * e0 / PI, max_relative = 1e-4);
        assert_relative_eq!(p[1], 4.0 / PI, max_relative = 1e-4);

        let well = PtWell::new(PI * PI, 1.0, 1.0, 1.0).unwrap();
        let p1 = numerical_pressure(&well, 1, &OracleConfig::with_levels(2)).unwrap();
        assert_relative_eq!(p1, 5.0, max_relative = 1e-4);
        assert!(numerical_pressure(&well, 2, &OracleConfig::with_levels(2)).is_err());
    }
}
