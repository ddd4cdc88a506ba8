//! Command-line front end: point checks, moduli-curve tracing, figure data
//! emission, and elliptic-parametrization evaluation.
//!
//! Exit codes: 0 success / on-variety, 2 off-variety, 1 domain error,
//! 64 usage, 73 I/O.

mod check;
mod csvio;
mod figures;
mod svg;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::exit;
use wkspin_core::elliptic::Sheet;
use wkspin_core::moduli::Branch;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_OFF_VARIETY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 73;

/// Default tolerance for classifying command-line inputs.  Looser than the
/// solver-grade 1e-9 used internally, so parameter triples entered with a
/// handful of decimals still land on the variety they were read off from.
pub const DEFAULT_CHECK_TOL: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "wkspin",
    version,
    about = "Constant-scalar-curvature 3-manifolds with Einstein-Dirac solutions: \
             point checks, moduli-curve tracing, figure data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SheetArg {
    Plus,
    Minus,
}

impl From<SheetArg> for Sheet {
    fn from(s: SheetArg) -> Sheet {
        match s {
            SheetArg::Plus => Sheet::Plus,
            SheetArg::Minus => Sheet::Minus,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one parameter triple (K, L, M): Ricci data, variety
    /// membership, WK-number, integrability residuals, flatness, Einstein
    /// residual, homothety invariant
    Check {
        #[arg(allow_hyphen_values = true)]
        k: f64,
        #[arg(allow_hyphen_values = true)]
        l: f64,
        #[arg(allow_hyphen_values = true)]
        m: f64,
        /// machine-readable JSON instead of text
        #[arg(long)]
        json: bool,
        /// override the default classification tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Trace one branch of the moduli curve and write a CSV of samples
    Trace {
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
        #[arg(long, default_value_t = 0.1)]
        m_min: f64,
        #[arg(long, default_value_t = 10.0)]
        m_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the six figure data files (L, S, Ricci eigenvalues, invariant)
    Figures {
        /// output directory for fig1..fig6 CSV files
        #[arg(long)]
        out_dir: PathBuf,
        /// also render SVG line plots next to the CSVs
        #[arg(long)]
        svg: bool,
        #[arg(long, default_value_t = 0.02)]
        m_min: f64,
        #[arg(long, default_value_t = 20.0)]
        m_max: f64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Evaluate L(z), M(z) and the closed-form identities at a point of the
    /// parametrizing surface
    Elliptic {
        #[arg(long, allow_hyphen_values = true)]
        z_re: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        z_im: f64,
        #[arg(long, value_enum, default_value = "plus")]
        sheet: SheetArg,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            // clap renders its own usage message
            let _ = e.print();
            exit(code);
        }
    };

    let code = match cli.command {
        Command::Check { k, l, m, json, tol } => {
            check::run(k, l, m, json, tol.unwrap_or(DEFAULT_CHECK_TOL))
        }
        Command::Trace {
            branch,
            m_min,
            m_max,
            samples,
            out,
        } => figures::run_trace(branch.into(), m_min, m_max, samples, &out),
        Command::Figures {
            out_dir,
            svg,
            m_min,
            m_max,
            samples,
        } => figures::run_figures(&out_dir, svg, m_min, m_max, samples),
        Command::Elliptic {
            z_re,
            z_im,
            sheet,
            json,
        } => check::run_elliptic(z_re, z_im, sheet.into(), json),
    };
    exit(code);
}
