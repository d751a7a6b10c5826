//! The trigonometric well `V(x) = V0 tan^2(pi x / L)` on `x in (-L/2, L/2)`,
//! its closed-form spectrum and the pressure on its walls.
//!
//! The stiffness `lambda` is the positive root of
//! `lambda (lambda - 1) = D`, `D = 2 m V0 L^2 / (pi^2 hbar^2)`, which makes
//! `E_n = W [n^2 + lambda (2n + 1)]`, `W = pi^2 hbar^2 / (2 m L^2)`, the exact
//! bound-state spectrum for `n = 0, 1, 2, ...`. At `V0 = 0` this is the box of
//! width `L` with the index shifted by one: `E_n = W (n + 1)^2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical configuration of the well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtWell {
    mass: f64,
    hbar: f64,
    v0: f64,
    width: f64,
}

impl PtWell {
    pub fn new(mass: f64, hbar: f64, v0: f64, width: f64) -> Result<Self> {
        positive("mass", mass)?;
        positive("hbar", hbar)?;
        positive("width", width)?;
        if !v0.is_finite() || v0 < 0.0 {
            return Err(Error::invalid("v0", v0, "must be finite and non-negative"));
        }
        Ok(Self { mass, hbar, v0, width })
    }

    /// A well in natural units, `m = hbar = 1`.
    pub fn natural(v0: f64, width: f64) -> Result<Self> {
        Self::new(1.0, 1.0, v0, width)
    }

    /// Same particle and depth, different width.
    pub fn with_width(&self, width: f64) -> Result<Self> {
        Self::new(self.mass, self.hbar, self.v0, width)
    }

    /// The well whose stiffness at this width is exactly `lambda` (`lambda >= 1`).
    pub fn with_lambda(mass: f64, hbar: f64, lambda: f64, width: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 1.0 {
            return Err(Error::invalid("lambda", lambda, "must be finite and >= 1"));
        }
        positive("mass", mass)?;
        positive("hbar", hbar)?;
        positive("width", width)?;
        let v0 = lambda * (lambda - 1.0) * PI * PI * hbar * hbar / (2.0 * mass * width * width);
        Self::new(mass, hbar, v0, width)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// `pi^2 hbar^2 / (2 m)`, so that `W(L) = kinetic_scale / L^2`.
    pub fn kinetic_scale(&self) -> f64 {
        PI * PI * self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// Potential energy at `x`, measured from the well centre.
    pub fn potential(&self, x: f64) -> f64 {
        if self.v0 == 0.0 {
            return 0.0;
        }
        let t = (PI * x / self.width).tan();
        self.v0 * t * t
    }

    /// Small-oscillation angular frequency `(pi / L) sqrt(2 V0 / m)`.
    pub fn harmonic_omega(&self) -> f64 {
        PI / self.width * (2.0 * self.v0 / self.mass).sqrt()
    }

    pub fn params(&self) -> SpectrumParams {
        derive_params(self)
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, value, "must be finite and positive"))
    }
}

/// Dimensionless bundle derived from a [`PtWell`] at its current width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumParams {
    /// Energy scale `W(L)`.
    pub w: f64,
    /// Depth in units of `W`, `D = V0 / W`.
    pub d: f64,
    pub lambda: f64,
    /// `1 - (lambda - 1) / (2 lambda - 1)`.
    pub mu: f64,
    pub dlambda_dl: f64,
}

impl SpectrumParams {
    /// The combination `lambda (1 - mu)` that multiplies `(2n + 1)` in the
    /// closed-form pressure.
    pub fn stiffness_factor(&self) -> f64 {
        self.lambda * (1.0 - self.mu)
    }
}

pub fn derive_params(well: &PtWell) -> SpectrumParams {
    let l = well.width;
    let w = well.kinetic_scale() / (l * l);
    if well.v0 == 0.0 {
        return SpectrumParams {
            w,
            d: 0.0,
            lambda: 1.0,
            mu: 1.0,
            dlambda_dl: 0.0,
        };
    }
    let d = well.v0 / w;
    // lambda - 1 without cancellation for shallow wells
    let excess = 2.0 * d / (1.0 + (1.0 + 4.0 * d).sqrt());
    let lambda = 1.0 + excess;
    let mu = 1.0 - excess / (2.0 * lambda - 1.0);
    // lambda (lambda - 1) = D grows like L^2.
    let dlambda_dl = 2.0 * d / (l * (2.0 * lambda - 1.0));
    SpectrumParams {
        w,
        d,
        lambda,
        mu,
        dlambda_dl,
    }
}

/// `E_n = W [n^2 + lambda (2n + 1)]`.
pub fn energy_level(well: &PtWell, n: u32) -> f64 {
    let p = derive_params(well);
    let n = f64::from(n);
    p.w * (n * n + p.lambda * (2.0 * n + 1.0))
}

/// The closed-form wall pressure `(2W/L) [n^2 + (2n + 1) lambda (1 - mu)]`,
/// taken as written. It is not `-dE_n/dL`; see [`pressure_exact`].
pub fn pressure_paper(well: &PtWell, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::invalid(
            "n",
            f64::from(n),
            "closed-form pressure starts at n = 1",
        ));
    }
    let p = derive_params(well);
    Ok(bracket_pressure(p.w, well.width, n, p.stiffness_factor()))
}

/// `(2W/L) [n^2 + (2n + 1) a]` for a given stiffness factor `a`.
pub(crate) fn bracket_pressure(w: f64, width: f64, n: u32, a: f64) -> f64 {
    let n = f64::from(n);
    2.0 * w / width * (n * n + (2.0 * n + 1.0) * a)
}

/// Hellmann-Feynman pressure `-dE_n/dL` with the full width dependence of
/// `lambda`.
pub fn pressure_exact(well: &PtWell, n: u32) -> f64 {
    let p = derive_params(well);
    let n = f64::from(n);
    let two_n1 = 2.0 * n + 1.0;
    2.0 * p.w / well.width * (n * n + two_n1 * p.lambda) - p.w * two_n1 * p.dlambda_dl
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // lambda = 2 with W = 0.5 at L = 1
    fn lambda2() -> PtWell {
        PtWell::new(PI * PI, 1.0, 1.0, 1.0).unwrap()
    }

    fn box_pi() -> PtWell {
        PtWell::natural(0.0, PI).unwrap()
    }

    fn central_lambda_slope(well: &PtWell, h: f64) -> f64 {
        let up = derive_params(&well.with_width(well.width() + h).unwrap()).lambda;
        let dn = derive_params(&well.with_width(well.width() - h).unwrap()).lambda;
        (up - dn) / (2.0 * h)
    }

    fn central_pressure(well: &PtWell, n: u32, h: f64) -> f64 {
        let up = energy_level(&well.with_width(well.width() + h).unwrap(), n);
        let dn = energy_level(&well.with_width(well.width() - h).unwrap(), n);
        -(up - dn) / (2.0 * h)
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(PtWell::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(PtWell::new(1.0, -1.0, 0.0, 1.0).is_err());
        assert!(PtWell::new(1.0, 1.0, -1e-3, 1.0).is_err());
        assert!(PtWell::new(1.0, 1.0, 0.0, f64::NAN).is_err());
        assert!(PtWell::new(1.0, 1.0, f64::INFINITY, 1.0).is_err());
        assert!(PtWell::with_lambda(1.0, 1.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn box_params() {
        let p = derive_params(&box_pi());
        assert_relative_eq!(p.w, 0.5, max_relative = 1e-15);
        assert_eq!(p.d, 0.0);
        assert_eq!(p.lambda, 1.0);
        assert_eq!(p.mu, 1.0);
        assert_eq!(p.dlambda_dl, 0.0);
    }

    #[test]
    fn lambda_two_params() {
        let well = PtWell::natural(PI * PI, 1.0).unwrap();
        let p = derive_params(&well);
        assert_relative_eq!(p.d, 2.0, max_relative = 1e-14);
        assert_relative_eq!(p.lambda, 2.0, max_relative = 1e-14);
        assert_relative_eq!(p.mu, 2.0 / 3.0, max_relative = 1e-14);
        // frozen from a central difference of lambda(L), step 1e-6
        let fd = central_lambda_slope(&well, 1e-6);
        assert_relative_eq!(fd, 4.0 / 3.0, max_relative = 1e-8);
        assert_relative_eq!(p.dlambda_dl, fd, max_relative = 1e-8);
    }

    #[test]
    fn energy_examples() {
        assert_relative_eq!(energy_level(&box_pi(), 1), 2.0, max_relative = 1e-15);
        assert_relative_eq!(energy_level(&lambda2(), 1), 3.5, max_relative = 1e-14);
        let p = derive_params(&lambda2());
        let gap = energy_level(&lambda2(), 2) - energy_level(&lambda2(), 1);
        assert_relative_eq!(gap, p.w * (3.0 + 2.0 * p.lambda), max_relative = 1e-14);
    }

    #[test]
    fn paper_pressure_examples() {
        assert_relative_eq!(pressure_paper(&box_pi(), 1).unwrap(), 1.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(pressure_paper(&lambda2(), 1).unwrap(), 3.0, max_relative = 1e-14);
        assert_relative_eq!(pressure_paper(&lambda2(), 2).unwrap(), 22.0 / 3.0, max_relative = 1e-14);
        assert!(pressure_paper(&lambda2(), 0).is_err());
    }

    #[test]
    fn exact_pressure_examples() {
        assert_relative_eq!(pressure_exact(&box_pi(), 1), 4.0 / PI, max_relative = 1e-15);
        assert_relative_eq!(pressure_exact(&lambda2(), 1), 5.0, max_relative = 1e-14);
        assert_relative_eq!(central_pressure(&lambda2(), 1, 1e-6), 5.0, max_relative = 1e-8);
    }

    #[test]
    fn box_pressure_is_twice_energy_over_width() {
        let well = box_pi();
        for n in 0..6 {
            let e = energy_level(&well, n);
            assert_relative_eq!(pressure_exact(&well, n), 2.0 * e / PI, max_relative = 1e-14);
        }
    }

    #[test]
    fn paper_and_exact_pressure_differ_away_from_box() {
        let well = lambda2();
        for n in 1..=2 {
            let exact = pressure_exact(&well, n);
            let paper = pressure_paper(&well, n).unwrap();
            assert!((paper - exact).abs() / exact > 1e-3);
        }
    }

    #[test]
    fn harmonic_gap_excess() {
        // D = 1e4: the lowest gap W (1 + 2 lambda) sits just above hbar omega.
        let well = PtWell::new(1.0, 1.0, 1e4 * PI * PI / 2.0, 1.0).unwrap();
        let p = derive_params(&well);
        assert_relative_eq!(p.d, 1e4, max_relative = 1e-12);
        let gap = energy_level(&well, 1) - energy_level(&well, 0);
        let ratio = gap / (well.hbar() * well.harmonic_omega());
        assert_relative_eq!(ratio, (1.0 + 2.0 * p.lambda) / (2.0 * 100.0), max_relative = 1e-12);
    }

    fn well_strategy() -> impl Strategy<Value = PtWell> {
        (0.1f64..10.0, 0.1f64..10.0, 0.0f64..1e3, 0.1f64..10.0)
            .prop_map(|(m, hb, v0, l)| PtWell::new(m, hb, v0, l).unwrap())
    }

    fn lambda_well(lambda: f64) -> impl Strategy<Value = PtWell> {
        (0.2f64..5.0, 0.2f64..5.0, 0.2f64..5.0)
            .prop_map(move |(m, hb, l)| PtWell::with_lambda(m, hb, lambda, l).unwrap())
    }

    proptest! {
        #[test]
        fn lambda_branch(well in well_strategy()) {
            let p = derive_params(&well);
            prop_assert!(p.lambda >= 1.0);
            prop_assert!(p.dlambda_dl >= 0.0);
            let v0 = p.lambda * (p.lambda - 1.0) * p.w;
            if well.v0() > 0.0 {
                prop_assert!(p.lambda > 1.0);
                // an f64 lambda near 1 cannot carry lambda - 1 to 1e-12
                if p.lambda - 1.0 > 1e-3 {
                    prop_assert!((v0 - well.v0()).abs() <= 1e-12 * well.v0());
                }
            } else {
                prop_assert_eq!(p.lambda, 1.0);
            }
        }

        #[test]
        fn hellmann_feynman(
            well in prop_oneof![lambda_well(1.0), lambda_well(2.0), lambda_well(5.0), lambda_well(20.0)],
            n in 0u32..=5,
        ) {
            let exact = pressure_exact(&well, n);
            let fd = central_pressure(&well, n, 1e-6 * well.width());
            prop_assert!((exact - fd).abs() / exact <= 1e-6);
        }

        #[test]
        fn monotone_levels(well in well_strategy(), n in 0u32..20) {
            prop_assert!(energy_level(&well, n + 1) > energy_level(&well, n));
            prop_assert!(energy_level(&well, n) > 0.0);
            if n >= 1 {
                prop_assert!(pressure_exact(&well, n) > 0.0);
            }
        }

        #[test]
        fn scaling_invariance(well in well_strategy(), c in 0.1f64..10.0, n in 0u32..6) {
            let scaled = PtWell::new(c * c * well.mass(), c * well.hbar(), well.v0(), well.width()).unwrap();
            let a = energy_level(&well, n);
            let b = energy_level(&scaled, n);
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }

        #[test]
        fn box_limit(l in 0.1f64..10.0, n in 0u32..8) {
            let well = PtWell::natural(1e-12, l).unwrap();
            let w = derive_params(&well).w;
            let boxed = w * f64::from(n + 1).powi(2);
            prop_assert!((energy_level(&well, n) - boxed).abs() <= 1e-9 * boxed);
        }

        // Holds for the two lowest levels from D = 1e4; the n^2 anharmonic
        // term pushes n = 2 to 1.013 there.
        #[test]
        fn harmonic_limit(log_d in 4.0f64..8.0, l in 0.2f64..5.0, n in 0u32..=1) {
            let d = 10f64.powf(log_d);
            let well = PtWell::natural(d * PI * PI / (2.0 * l * l), l).unwrap();
            let ratio = energy_level(&well, n) / (well.harmonic_omega() * (f64::from(n) + 0.5));
            prop_assert!((0.99..=1.01).contains(&ratio), "ratio {}", ratio);
        }
    }
}
