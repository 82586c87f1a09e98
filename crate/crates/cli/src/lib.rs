//! Command-line front end: loads symbols, runs sweeps from the core library and writes
//! reports.

pub mod commands;
pub mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use schur_scope::nevanlinna::GridSpec;
use schur_scope::tolerances::{DEFAULT_SEED, TOL_QUAD};
use schur_scope::Error;

use report::{num, num_u64};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

/// Environment variable bounding the worker-thread count.
pub const THREADS_VAR: &str = "SCHUR_SCOPE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "schur-scope", version, about = "Counting functions and pull-back Carleson measures of disk self-maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a symbol maps the circle into the closed disk.
    Validate(Common),
    /// Counting function at points, and its maximal functions over annuli and windows.
    Nevanlinna(Common),
    /// Pull-back window masses, the Carleson function and its exponent.
    Carleson(CarlesonArgs),
    /// Run the full inequality suite over a symbol or a corpus directory.
    Verify(Common),
    /// Orlicz compactness diagnostic.
    Compactness(CompactnessArgs),
    /// Emit the equivalence table `h, rho, nu, ratio_up, ratio_down`.
    Plotdata(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Symbol JSON file.
    #[arg(long)]
    pub symbol: Option<PathBuf>,
    /// Directory of symbol JSON files, processed in file-name order.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Target point `re,im` (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub w: Vec<String>,
    /// Annulus widths for `ν_φ(t)` (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    /// Scales `h` (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<f64>,
    /// Window directions as angles in radians.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xi: Vec<f64>,
    /// Angular lattice size for maximal functions; the radial size is an eighth of it.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = TOL_QUAD)]
    pub tol: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CarlesonArgs {
    #[command(flatten)]
    pub common: Common,
    /// Fit `ρ_φ(h) ≈ C h^α` over the dyadic `--h` list, or six dyadic scales below `(1 - |φ(0)|)/4`.
    #[arg(long)]
    pub fit: bool,
    /// Monte Carlo samples for the window cross-check; 0 disables it.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CompactnessArgs {
    #[command(flatten)]
    pub common: Common,
    /// Orlicz function: `power:P` or `exp_power:A`.
    #[arg(long, default_value = "power:2")]
    pub psi: String,
}

/// A failure that ends the run with a specific exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Solver { .. } | Error::Degenerate => EXIT_SOLVER,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Common {
    pub fn grid_spec(&self) -> Result<GridSpec, Failure> {
        match self.grid {
            None => Ok(GridSpec::default()),
            Some(n) => Ok(GridSpec::new((n / 8).max(4), n, GridSpec::default().refinement_levels)?),
        }
    }

    /// `h` values sorted in decreasing order.
    pub fn h_list(&self) -> Vec<f64> {
        let mut hs = self.h.clone();
        hs.sort_by(|a, b| b.total_cmp(a));
        hs.dedup();
        hs
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if !(self.tol > 0.0 && self.tol <= 1e-2) {
            return Err(Failure::config(format!("--tol {} must lie in (0, 1e-2]", self.tol)));
        }
        for &h in &self.h {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Failure::config(format!("--h {h} must be positive")));
            }
        }
        for &t in &self.t {
            if !(t > 0.0 && t < 1.0) {
                return Err(Failure::config(format!("--t {t} must lie in (0, 1)")));
            }
        }
        if self.xi.iter().any(|x| !x.is_finite()) {
            return Err(Failure::config("--xi angles must be finite"));
        }
        Ok(())
    }

    /// Echo of every input that affects the output, for replay.
    pub fn echo(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        let path = |p: &Option<PathBuf>| p.as_ref().map_or(Value::Null, |p| Value::String(p.display().to_string()));
        m.insert("symbol".into(), path(&self.symbol));
        m.insert("corpus".into(), path(&self.corpus));
        m.insert("w".into(), Value::Array(self.w.iter().map(|s| Value::String(s.clone())).collect()));
        m.insert("t".into(), Value::Array(self.t.iter().map(|&x| num(x)).collect()));
        m.insert("h".into(), Value::Array(self.h_list().into_iter().map(num).collect()));
        m.insert("xi".into(), Value::Array(self.xi.iter().map(|&x| num(x)).collect()));
        m.insert("grid".into(), self.grid.map_or(Value::Null, |g| num_u64(g as u64)));
        m.insert("seed".into(), num_u64(self.seed));
        m.insert("tol".into(), num(self.tol));
        m.insert(
            "format".into(),
            Value::String(match self.format {
                Format::Json => "json".into(),
                Format::Csv => "csv".into(),
            }),
        );
        m
    }
}

/// Applies the thread bound from the environment, if set.
pub fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::config(format!("{THREADS_VAR}={raw} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::config(format!("cannot start {n} threads: {e}")))
}

/// Runs a parsed command line, writes its output and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    match commands::dispatch(&cli.command) {
        Ok(outcome) => {
            if let Err(e) = outcome.write() {
                eprintln!("error: {}", e.message);
                return e.code;
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
