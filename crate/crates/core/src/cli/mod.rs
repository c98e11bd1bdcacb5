//! Command-line front end: every operation on the JSON interchange format.
//!
//! Inputs are given as file paths, inline JSON (arguments starting with
//! `{` or `[`), or `-` for standard input. Results are written as one line
//! of JSON to standard output (or `--output`). Exit codes: 0 success,
//! 2 malformed or mismatched input, 3 numeric failure.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::series::Basis;

pub const DEFAULT_DEGREE: u32 = 6;
pub const DEFAULT_MAX_VAR: usize = 4;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100_000;

/// Library operation → the subcommand that exposes it.
pub const COVERAGE: &[(&str, &str)] = &[
    ("multiindex::add", "wick-mul"),
    ("multiindex::sub", "wick-inv"),
    ("multiindex::factorial", "norms"),
    ("multiindex::weight", "leibenzon"),
    ("multiindex::two_n_pow", "norms"),
    ("multiindex::enumerate", "wick-inv"),
    ("series::add", "gleason-check"),
    ("series::scale", "wick-mul"),
    ("series::wick_mul", "wick-mul"),
    ("series::wick_pow", "wick-mul"),
    ("series::wick_inv", "wick-inv"),
    ("series::hermite_transform", "hermite"),
    ("series::inverse_hermite", "hermite"),
    ("series::evaluate", "evaluate"),
    ("series::norms", "norms"),
    ("series::inner_product", "norms"),
    ("series::leibenzon", "leibenzon"),
    ("series::gleason_residual", "gleason-check"),
    ("series::kq_membership", "kq-member"),
    ("realization::to_series", "realize-series"),
    ("realization::eval", "realize-eval"),
    ("realization::product", "realize-product"),
    ("realization::sum", "realize-sum"),
    ("realization::inverse", "realize-inverse"),
    ("realization::leibenzon_realization_identity", "leibenzon"),
    ("realization::is_rational_witness", "realize-series"),
    ("fueter::qmul", "ck-product"),
    ("fueter::ck_extend", "ck-extend"),
    ("fueter::restrict", "ck-extend"),
    ("fueter::ck_product", "ck-product"),
    ("fueter::fueter_monomial", "fueter-monomial"),
    ("fueter::dirac_apply", "dirac-check"),
    ("fueter::ck_von_neumann_inv", "ck-product"),
    ("kernels::arveson_kernel", "kernel-gram"),
    ("kernels::fock_kernel", "kernel-gram"),
    ("kernels::blaschke", "blaschke-check"),
    ("kernels::schur_gram", "kernel-gram"),
    ("kernels::agler_residual", "agler-check"),
    ("whitenoise::hermite", "hermite"),
    ("whitenoise::hermite_eval", "hermite"),
    ("whitenoise::chaos_eval", "evaluate"),
    ("whitenoise::mc_inner", "mc-inner"),
    ("whitenoise::mc_series_moment", "mc-moment"),
];

#[derive(Parser, Debug)]
#[command(
    name = "wickcalc",
    version,
    about = "Truncated power series calculi: Wick products, realizations, Fueter calculus, kernels and chaos Monte Carlo"
)]
pub struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Mc {
    /// Number of samples.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// RNG seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Wick product F ◊ G, or the power F^{◊n} with --power.
    WickMul {
        f: String,
        g: Option<String>,
        #[arg(long)]
        power: Option<u32>,
        /// Lower the truncation degree of the inputs.
        #[arg(long)]
        degree: Option<u32>,
        /// Multiply the result by a real scalar.
        #[arg(long, allow_hyphen_values = true)]
        scale: Option<f64>,
    },
    /// Wick inverse of a series with invertible constant term.
    WickInv {
        f: String,
        /// Lower the truncation degree of the input.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Hermite transform (chaos → monomial, monomial → chaos), or the
    /// Hermite polynomial h_n with --poly.
    Hermite {
        f: Option<String>,
        #[arg(long)]
        poly: Option<usize>,
        /// With --poly: also evaluate h_n here.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<f64>,
    },
    /// Evaluate a monomial series at a point, or a chaos series at real
    /// pairing values.
    Evaluate {
        f: String,
        #[arg(long)]
        point: String,
    },
    /// All space norms of F, or the inner product ⟨F, G⟩ in --space.
    Norms {
        f: String,
        g: Option<String>,
        /// Kondratiev / Hida parameter.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        q: i32,
        #[arg(long, value_enum, default_value_t = SpaceArg::WhiteNoise)]
        space: SpaceArg,
    },
    /// Leibenzon operator R_j on a series; on a realization with --inject f,
    /// the residual of R_k[C(I−zA)^{-1}f] = C(I−zA)^{-1}A_k f.
    Leibenzon {
        input: String,
        #[arg(long)]
        var: u32,
        #[arg(long)]
        inject: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
    },
    /// Max coefficient of (F − F(0)) − Σ z_j R_j F, computed exactly.
    GleasonCheck { f: String },
    /// Membership of |z| in K_q(δ).
    KqMember {
        point: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        q: i32,
        #[arg(long)]
        delta: f64,
    },
    /// Series of a realization; with --check F, whether it realizes F.
    RealizeSeries {
        r: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = BasisArg::Monomial)]
        basis: BasisArg,
        #[arg(long)]
        check: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate a realization by a direct linear solve.
    RealizeEval {
        r: String,
        #[arg(long)]
        point: String,
    },
    /// Cascade W₁W₂.
    RealizeProduct { r1: String, r2: String },
    /// Sum W₁ + W₂.
    RealizeSum { r1: String, r2: String },
    /// Inverse W^{-1}.
    RealizeInverse { r: String },
    /// CK extension of a polynomial in (x₁,x₂,x₃); with --restrict, the
    /// restriction of a polynomial in (x₀,…,x₃) to x₀ = 0.
    CkExtend {
        phi: String,
        #[arg(long)]
        restrict: bool,
    },
    /// CK product f∘g; with --von-neumann, (I − G)^{-∘} of a matrix G.
    CkProduct {
        f: String,
        g: Option<String>,
        #[arg(long)]
        von_neumann: bool,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: u32,
    },
    /// Apply the Cauchy–Fueter operator.
    DiracCheck {
        f: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Fueter monomial ζ^α for α = [a, b, c].
    FueterMonomial {
        #[arg(long)]
        alpha: String,
    },
    /// Gram matrix of a kernel on a point list.
    KernelGram {
        points: String,
        #[arg(long, value_enum)]
        kernel: KernelArg,
        /// Realization of the multiplier s for --kernel schur.
        #[arg(long)]
        multiplier: Option<String>,
    },
    /// Blaschke factor images and the kernel identity at every point pair.
    BlaschkeCheck {
        points: String,
        #[arg(long)]
        center: String,
    },
    /// Residual of 1 − s(z)s(w)* = Σ (1 − z_ℓ w̄_ℓ) k_ℓ(z, w).
    AglerCheck { multiplier: String, kernels: String, points: String },
    /// Monte Carlo estimate of E[H_α H_β].
    McInner {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        /// Number of normal coordinates sampled (at least the support).
        #[arg(long, default_value_t = DEFAULT_MAX_VAR)]
        max_var: usize,
        #[command(flatten)]
        mc: Mc,
    },
    /// Monte Carlo estimate of E[F] for a real chaos series.
    McMoment {
        f: String,
        #[command(flatten)]
        mc: Mc,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceArg {
    P,
    WhiteNoise,
    Arveson,
    Fock,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisArg {
    Monomial,
    Chaos,
    Fueter,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Monomial => Basis::Monomial,
            BasisArg::Chaos => Basis::Chaos,
            BasisArg::Fueter => Basis::Fueter,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelArg {
    Arveson,
    Fock,
    Schur,
}

/// Failure of one invocation.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_numeric() => 3,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Lib(e) => (e.kind(), e.to_string()),
            CliError::Io(m) => ("io", m.clone()),
            CliError::Usage(m) => ("usage", m.clone()),
        };
        json!({"error": {"kind": kind, "message": message}})
    }
}

/// Exit code and text for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

/// Names of all subcommands, as clap sees them.
pub fn subcommand_names() -> Vec<String> {
    Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect()
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 },
                    stdout: e.to_string(),
                },
                _ => {
                    let err = CliError::Usage(e.to_string().trim().to_string());
                    Outcome { code: 2, stdout: crate::json::to_string(&err.to_json()) + "\n" }
                }
            };
        }
    };
    let result = commands::execute(&cli.command);
    let (code, body) = match result {
        Ok(v) => (0, v),
        Err(e) => (e.exit_code(), e.to_json()),
    };
    let text = crate::json::to_string(&body) + "\n";
    if code == 0 {
        if let Some(path) = &cli.output {
            if let Err(e) = std::fs::write(path, &text) {
                let err = CliError::Io(format!("cannot write {}: {e}", path.display()));
                return Outcome { code: 2, stdout: crate::json::to_string(&err.to_json()) + "\n" };
            }
            return Outcome { code, stdout: String::new() };
        }
    }
    Outcome { code, stdout: text }
}
