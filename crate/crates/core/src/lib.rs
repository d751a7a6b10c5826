//! Single-particle quantum heat engines in the trigonometric Poschl-Teller
//! well `V0 tan^2(pi x / L)`.
//!
//! - [`well`]: parameters, closed-form spectrum and wall pressure.
//! - [`oracle`]: grid Schrodinger solver used to check the closed forms.
//! - [`engine`]: Joule-Brayton and Otto cycles in exact and paper modes.
//! - [`report`]: the command-line front end, CSV/JSON output and SVG diagrams.

pub mod engine;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod report;
pub mod well;

pub use error::{Error, Result};
pub use well::{derive_params, energy_level, pressure_exact, pressure_paper, PtWell, SpectrumParams};
