//! Flag parsing for the `ptengine` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{Command, Format, RunSpec, Scale, SweepParam, SweepSpec, DEFAULT_N_MAX, DEFAULT_SAMPLES};
use crate::engine::{CycleKind, Mode};
use crate::report::format::DEFAULT_PRECISION;

#[derive(Debug, Parser)]
#[command(name = "ptengine", version, about = "Quantum heat engines in a Poschl-Teller well")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Closed-form levels next to the grid oracle.
    Spectrum(Common),
    /// Run the oracle, Hellmann-Feynman and limit checks; nonzero exit on failure.
    Validate(Common),
    /// Joule-Brayton cycle in both modes.
    Jb(Common),
    /// Otto cycle in both modes.
    Otto(Common),
    /// One cycle per parameter value.
    Sweep(SweepArgs),
    /// Box and harmonic limit checks.
    Limits(Common),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Paper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CycleArg {
    Jb,
    Otto,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScaleArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ParamArg {
    V0,
    #[value(name = "L1", alias = "l1")]
    L1,
    Rp,
    #[value(name = "L3", alias = "l3")]
    L3,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v0: f64,
    /// Well width at corner 1.
    #[arg(long = "L1", visible_aliases = ["l1", "L", "width"], default_value_t = 1.0, allow_negative_numbers = true)]
    pub l1: f64,
    /// Joule-Brayton pressure ratio.
    #[arg(long, allow_negative_numbers = true)]
    pub rp: Option<f64>,
    /// Otto expanded width.
    #[arg(long = "L3", visible_alias = "l3", allow_negative_numbers = true)]
    pub l3: Option<f64>,
    /// Highest level listed by `spectrum`.
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub n_max: usize,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Mode drawn in the SVG and written to the stroke CSV.
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the selected mode's stroke samples here as CSV.
    #[arg(long)]
    pub strokes_csv: Option<PathBuf>,
    /// Significant digits in the output.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub param: ParamArg,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "linear")]
    pub scale: ScaleArg,
    /// Cycle swept over `v0` or `L1`.
    #[arg(long, value_enum, default_value = "jb")]
    pub cycle: CycleArg,
}

impl Common {
    fn into_spec(self, command: Command) -> RunSpec {
        let mut spec = RunSpec::new(command);
        spec.mass = self.mass;
        spec.hbar = self.hbar;
        spec.v0 = self.v0;
        spec.l1 = self.l1;
        spec.rp = self.rp;
        spec.l3 = self.l3;
        spec.n_max = self.n_max;
        spec.samples = self.samples;
        if let Some(f) = self.format {
            spec.format = match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
        }
        spec.mode = match self.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Paper => Mode::Paper,
        };
        spec.svg = self.svg;
        spec.strokes_csv = self.strokes_csv;
        spec.precision = self.precision;
        spec
    }
}

impl Cli {
    pub fn into_spec(self) -> RunSpec {
        match self.command {
            Sub::Spectrum(c) => c.into_spec(Command::Spectrum),
            Sub::Validate(c) => c.into_spec(Command::Validate),
            Sub::Jb(c) => c.into_spec(Command::Jb),
            Sub::Otto(c) => c.into_spec(Command::Otto),
            Sub::Limits(c) => c.into_spec(Command::Limits),
            Sub::Sweep(s) => {
                let mut spec = s.common.into_spec(Command::Sweep);
                spec.cycle = match s.cycle {
                    CycleArg::Jb => CycleKind::JouleBrayton,
                    CycleArg::Otto => CycleKind::Otto,
                };
                spec.sweep = Some(SweepSpec {
                    param: match s.param {
                        ParamArg::V0 => SweepParam::V0,
                        ParamArg::L1 => SweepParam::L1,
                        ParamArg::Rp => SweepParam::Rp,
                        ParamArg::L3 => SweepParam::L3,
                    },
                    from: s.from,
                    to: s.to,
                    steps: s.steps,
                    scale: match s.scale {
                        ScaleArg::Linear => Scale::Linear,
                        ScaleArg::Log => Scale::Log,
                    },
                });
                spec
            }
        }
    }
}
