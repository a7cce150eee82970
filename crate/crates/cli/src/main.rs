//! `qborel` command-line front end.

mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qborel::{QuadratureConfig, C64};

#[derive(Parser, Debug)]
#[command(name = "qborel", version, about = "q-Borel-Laplace summation toolkit")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Base q > 1.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub q: f64,
    /// Trapezoid step in units of the kernel width.
    #[arg(long = "quad-step", global = true)]
    pub quad_step: Option<f64>,
    /// Relative tail tolerance.
    #[arg(long = "quad-tol", global = true)]
    pub quad_tol: Option<f64>,
    /// Largest window half-width in units of the kernel width.
    #[arg(long = "quad-window", global = true)]
    pub quad_window: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Common {
    pub fn quad(&self) -> QuadratureConfig {
        let d = QuadratureConfig::default();
        QuadratureConfig {
            step: self.quad_step.unwrap_or(d.step),
            tol: self.quad_tol.unwrap_or(d.tol),
            max_window: self.quad_window.unwrap_or(d.max_window),
            ..d
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GermKind {
    /// `1/(ξ + a)`.
    Euler,
    /// Borel transform of `E_a E_b`.
    F1,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sum of E^[m]_{a,q} in direction d, with the functional-equation residual.
    EulerSum {
        #[arg(long, value_parser = parse::complex, default_value = "1,0")]
        a: C64,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        /// Points, `r@theta` or `re,im`, separated by `;`.
        #[arg(long, value_parser = parse::grid_arg)]
        x: parse::Grid,
        #[arg(long, default_value_t = 1e-7)]
        threshold: f64,
    },
    /// Residue prediction of S^{d1} - S^{d2} against two quadratures.
    StokesCheck {
        #[arg(long, value_parser = parse::complex, default_value = "1,0")]
        a: C64,
        #[arg(long, allow_negative_numbers = true)]
        d1: f64,
        #[arg(long, allow_negative_numbers = true)]
        d2: f64,
        #[arg(long, value_parser = parse::grid_arg)]
        x: parse::Grid,
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
    /// ln|1/S(E_1)| + t^2/(2 log q) along the spiral r e^{it}.
    SpiralScan {
        #[arg(long, default_value_t = 0.5)]
        r: f64,
        /// Angles separated by `;`.
        #[arg(long, value_parser = parse::reals_arg, allow_hyphen_values = true)]
        t: parse::Reals,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        /// Allowed excess over the t = 0 value.
        #[arg(long, default_value_t = 3.0)]
        margin: f64,
    },
    /// Vertices and slopes of the Newton polygon of an operator file.
    NewtonPolygon {
        #[arg(long)]
        operator: PathBuf,
    },
    /// Iterated Laplace transforms of a Borel germ.
    Multisum {
        #[arg(long, value_parser = parse::orders_arg, default_value = "1,2")]
        order: parse::Orders,
        #[arg(long, value_enum, default_value_t = GermKind::F1)]
        germ: GermKind,
        #[arg(long, value_parser = parse::complex, default_value = "1,0")]
        a: C64,
        #[arg(long, value_parser = parse::complex, default_value = "2,0")]
        b: C64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, value_parser = parse::grid_arg)]
        x: parse::Grid,
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
    /// Product theorem on two Euler decompositions.
    ProductCheck {
        #[arg(long = "A")]
        a: PathBuf,
        #[arg(long = "B")]
        b: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        d: f64,
        /// Points separated by `;`; required and nonempty.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        threshold: f64,
    },
    /// Moments, round trips, kernel identities and morphism checks.
    IdentitySuite,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::EulerSum { .. } => "euler-sum",
            Command::StokesCheck { .. } => "stokes-check",
            Command::SpiralScan { .. } => "spiral-scan",
            Command::NewtonPolygon { .. } => "newton-polygon",
            Command::Multisum { .. } => "multisum",
            Command::ProductCheck { .. } => "product-check",
            Command::IdentitySuite => "identity-suite",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = cli.command.name();
    let outcome = commands::run(&cli.command, &cli.common);
    let code = report::emit(name, &cli.common, outcome);
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    code
}
