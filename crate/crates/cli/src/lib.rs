//! Command-line front end: argument model, dispatch, and the verification
//! suites shared with the acceptance tests.

// `!(x < y)` is deliberate: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod grid;
pub mod suites;
pub mod table;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::commands::TransformKind;
use crate::suites::{Suite, SuiteOptions};
use crate::table::{render_csv, render_json, Meta, Table};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "zonal", version, about = "Zonal spherical functions on rank-one symmetric spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Root multiplicities P,Q; 1,0 is SL(2,R)
    #[arg(long, default_value = "1,0")]
    pub space: String,
    /// Spectral parameter RE[+IMi]
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Units of --lambda: rho, alpha or geodesic
    #[arg(long, default_value = "rho")]
    pub units: String,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutFormat,
    /// Tolerance override (series truncation; tightens verify checks)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for randomized checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformArg {
    Abel,
    Spherical,
    SpectralFf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    MasterIntegral,
    Bochner,
    Routes,
    Positivity,
    Decay,
    Singularity,
    Abel,
    SpectralFf,
    Theorem41,
    Theorem51,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate φ_λ(a_t) by one or more routes
    Eval {
        #[command(flatten)]
        common: Common,
        /// Points: LIST of complex values or START:STOP:STEP
        #[arg(long, default_value = "0:3:0.5", allow_hyphen_values = true)]
        t: String,
        /// bochner, series, oracle (comma separated) or all
        #[arg(long, default_value = "bochner")]
        methods: String,
    },
    /// Tabulate the Bochner density m(λ, υ)
    Density {
        #[command(flatten)]
        common: Common,
        /// Geodesic-dual frequencies
        #[arg(long, default_value = "-10:10:0.5", allow_hyphen_values = true)]
        upsilon: String,
    },
    /// Residue-series values or coefficients
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "0.5:4:0.5")]
        t: String,
        /// Terms per Weyl branch
        #[arg(long)]
        terms: Option<usize>,
        /// Print the coefficients at the first t instead of values
        #[arg(long)]
        coefficients: bool,
    },
    /// Abel, spherical or spectral Abel transform of a truncated Gaussian
    Transform {
        #[arg(value_enum)]
        kind: TransformArg,
        #[command(flatten)]
        common: Common,
        /// Width of exp(−(t/σ)²)
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// t (abel), λ (spherical) or υ (spectral-ff) values
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Run a verification suite; exit 0 iff every check passes
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::MasterIntegral => Suite::MasterIntegral,
            SuiteArg::Bochner => Suite::Bochner,
            SuiteArg::Routes => Suite::Routes,
            SuiteArg::Positivity => Suite::Positivity,
            SuiteArg::Decay => Suite::Decay,
            SuiteArg::Singularity => Suite::Singularity,
            SuiteArg::Abel => Suite::Abel,
            SuiteArg::SpectralFf => Suite::SpectralFf,
            SuiteArg::Theorem41 => Suite::Theorem41,
            SuiteArg::Theorem51 => Suite::Theorem51,
        }
    }
}

/// Rendered output and process exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

struct Validated {
    space: zonal::RankOneSpace,
    lambda: Option<zonal::SpectralParam>,
    meta: Meta,
}

fn validate(c: &Common) -> Result<Validated, CliError> {
    let space = grid::parse_space(&c.space)?;
    let units = grid::parse_units(&c.units)?;
    let lambda = c.lambda.as_deref().map(|s| grid::parse_lambda(s, units)).transpose()?;
    if let Some(t) = c.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Validation(format!("--tol must be positive, got {t}")));
        }
    }
    let meta = Meta {
        space: Some((space.p, space.q)),
        lambda: lambda.map(|l| l.value),
        units: units.name().to_string(),
        seed: c.seed,
    };
    Ok(Validated { space, lambda, meta })
}

fn render(out: OutFormat, meta: &Meta, table: &Table) -> Result<String, CliError> {
    match out {
        OutFormat::Json => Ok(render_json(meta, table)),
        OutFormat::Csv => render_csv(table),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let zero = zonal::SpectralParam::rho(zonal::Complex64::new(0.0, 0.0));
    let (common, table, exit_code) = match &cli.command {
        Command::Eval { common, t, methods } => {
            let v = validate(common)?;
            let ts = grid::parse_points(t)?;
            let lam = v.lambda.unwrap_or(zero);
            (common, commands::eval(&v.space, &lam, &ts, methods, common.tol)?, 0)
        }
        Command::Density { common, upsilon } => {
            let v = validate(common)?;
            let ups = grid::parse_real_points(upsilon, "--upsilon")?;
            (common, commands::density(&v.space, &v.lambda.unwrap_or(zero), &ups)?, 0)
        }
        Command::Series { common, t, terms, coefficients } => {
            let v = validate(common)?;
            let ts = grid::parse_real_points(t, "--t")?;
            let lam = v.lambda.ok_or_else(|| CliError::Validation("series needs --lambda (λ = 0 is a double pole)".into()))?;
            (common, commands::series(&v.space, &lam, &ts, *terms, common.tol, *coefficients)?, 0)
        }
        Command::Transform { kind, common, sigma, grid: g } => {
            let v = validate(common)?;
            if !v.space.is_sl2() {
                return Err(CliError::Validation("transforms are implemented for SL(2,R), --space 1,0".into()));
            }
            let (kind, default) = match kind {
                TransformArg::Abel => (TransformKind::Abel, "0:6:0.25"),
                TransformArg::Spherical => (TransformKind::Spherical, "0:10:0.5"),
                TransformArg::SpectralFf => (TransformKind::SpectralFf, "-10:10:0.5"),
            };
            let pts = grid::parse_real_points(g.as_deref().unwrap_or(default), "--grid")?;
            (common, commands::transform(kind, *sigma, &pts)?, 0)
        }
        Command::Verify { suite, common } => {
            let v = validate(common)?;
            let opts = SuiteOptions {
                seed: common.seed,
                lambda: v.lambda,
                tol: common.tol,
            };
            let (table, ok) = commands::verify((*suite).into(), &opts);
            (common, table, if ok { 0 } else { 1 })
        }
    };
    let meta = validate(common)?.meta;
    Ok(Outcome {
        stdout: render(common.out, &meta, &table)?,
        exit_code,
    })
}
