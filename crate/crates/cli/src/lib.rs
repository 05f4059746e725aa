//! Batch front end: spectra, eigenfunction tables, operator matrices and the
//! verification suites, with CSV or JSON output.
//!
//! Exit codes: 0 when everything ran (and every verified identity passed),
//! 1 when at least one identity failed, 2 on usage, parameter or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use relosc_core::opalg::{build_matrix, run_suite, Identity, VerifyOptions, DEFAULT_N_MAX, MIN_GRID_POINTS};
use relosc_core::output::{matrix_json, report_lines, spectrum_csv, spectrum_json, EigenTable};
use relosc_core::{Error, FrameKind, GridSpec, ModelParams, OperatorLabel, SpectrumTable, Tolerances};

/// Environment variable holding default tolerance overrides (`NAME=VAL,...`).
pub const TOLERANCE_ENV: &str = "RELOSC_DEFAULT_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "relosc", version, about = "Spectra, eigenfunctions and operator algebra of (1+1) relativistic oscillators")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Particle mass m (> 0).
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    mass: f64,
    /// Oscillator frequency omega (> 0).
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    omega: f64,
    /// Deformation parameter epsilon (>= 0); 1 is anti-de Sitter, 0 the harmonic oscillator.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    epsilon: f64,
    /// Highest quantum number (matrix truncation is n_max + 1).
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    n_max: usize,
    /// Number of grid points for tables and pointwise checks.
    #[arg(long, global = true, default_value_t = GridSpec::DEFAULT_POINTS)]
    grid_points: usize,
    #[arg(long, global = true, value_enum, default_value_t = FrameArg::Natural)]
    frame: FrameArg,
    /// Output format; tables default to csv, matrices and reports are json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override NAME=VAL (repeatable, or comma-separated).
    #[arg(long = "tol", global = true, value_name = "NAME=VAL")]
    tol: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameArg {
    Natural,
    Conformal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels E_0 ..= E_{n_max}.
    Spectrum,
    /// Eigenfunctions tabulated on the grid.
    Eigenfunction {
        /// Tabulate only U_n (default: all n <= n_max).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Operator matrices in the energy basis.
    Matrices {
        /// Operator labels, e.g. N A_plus KG.
        #[arg(required = true)]
        labels: Vec<String>,
    },
    /// Check algebraic identities and stream one JSON report per line.
    Verify {
        /// `all`, or a comma-separated list of identity names.
        #[arg(long)]
        suite: Option<String>,
        /// Identity names.
        identities: Vec<String>,
    },
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub n_max: usize,
    pub grid_points: usize,
    pub frame: FrameKind,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    format: Option<Format>,
}

impl RunConfig {
    fn from_args(c: &CommonArgs, env_tol: Option<&str>) -> Result<Self, Error> {
        let params = ModelParams::new(c.mass, c.omega, c.epsilon)?;
        if c.grid_points < MIN_GRID_POINTS {
            return Err(Error::Usage(format!("--grid-points must be at least {MIN_GRID_POINTS}, got {}", c.grid_points)));
        }
        let mut tolerances = Tolerances::default();
        if let Some(env) = env_tol {
            tolerances
                .apply_list(env)
                .map_err(|e| Error::Usage(format!("{TOLERANCE_ENV}: {e}")))?;
        }
        for t in &c.tol {
            tolerances.apply_list(t)?;
        }
        let frame = match c.frame {
            FrameArg::Natural => FrameKind::Natural,
            FrameArg::Conformal => FrameKind::Conformal,
        };
        Ok(RunConfig {
            params,
            n_max: c.n_max,
            grid_points: c.grid_points,
            frame,
            tolerances,
            out: c.out.clone(),
            format: c.format,
        })
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { n_max: self.n_max, grid_points: self.grid_points, tolerances: self.tolerances.clone() }
    }

    fn summary(&self) -> String {
        let k = self.params.k.map_or_else(|| "none".to_string(), relosc_core::output::fmt_f64);
        format!("regime={} k={k}", self.params.regime.as_str())
    }
}

fn json_only(cfg: &RunConfig, what: &str) -> Result<(), Error> {
    if cfg.format == Some(Format::Csv) {
        return Err(Error::Usage(format!("{what} are only available as json")));
    }
    Ok(())
}

fn cmd_spectrum(cfg: &RunConfig) -> Result<String, Error> {
    let t = SpectrumTable::new(&cfg.params, cfg.n_max);
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => spectrum_csv(&t),
        Format::Json => spectrum_json(&t).map(|s| s + "\n"),
    }
}

fn cmd_eigenfunction(cfg: &RunConfig, n: Option<usize>) -> Result<String, Error> {
    if cfg.frame == FrameKind::Conformal && cfg.params.is_limit() {
        return Err(Error::Regime("the conformal frame needs epsilon > 0".into()));
    }
    let indices: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (0..=cfg.n_max).collect(),
    };
    let top = indices.iter().copied().max().unwrap_or(0);
    let grid = GridSpec::new(&cfg.params, cfg.frame, cfg.grid_points, top);
    let table = EigenTable::new(&cfg.params, grid, &indices)?;
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json().map(|s| s + "\n"),
    }
}

fn cmd_matrices(cfg: &RunConfig, labels: &[String]) -> Result<String, Error> {
    json_only(cfg, "matrices")?;
    let labels = labels.iter().map(|l| l.parse::<OperatorLabel>()).collect::<Result<Vec<_>, _>>()?;
    let mut out = String::new();
    for l in labels {
        out.push_str(&matrix_json(&cfg.params, &build_matrix(&cfg.params, l, cfg.n_max)?)?);
        out.push('\n');
    }
    Ok(out)
}

fn select_identities(p: &ModelParams, suite: Option<&str>, names: &[String]) -> Result<Vec<Identity>, Error> {
    let mut requested: Vec<&str> = names.iter().map(String::as_str).collect();
    if let Some(s) = suite {
        requested.extend(s.split(',').map(str::trim).filter(|s| !s.is_empty()));
    }
    if requested.is_empty() || requested.contains(&"all") {
        return Ok(Identity::all_for(p));
    }
    requested.into_iter().map(str::parse).collect()
}

fn cmd_verify(cfg: &RunConfig, suite: Option<&str>, names: &[String]) -> Result<(String, bool), Error> {
    json_only(cfg, "verification reports")?;
    let ids = select_identities(&cfg.params, suite, names)?;
    let reports = run_suite(&cfg.params, &ids, &cfg.verify_options())?;
    let all_pass = reports.iter().all(|r| r.passed());
    Ok((report_lines(&reports)?, all_pass))
}

fn emit(cfg: &RunConfig, body: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => stdout.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: &Cli, env_tol: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Error> {
    let cfg = RunConfig::from_args(&cli.common, env_tol)?;
    let (body, code) = match &cli.command {
        Command::Spectrum => (cmd_spectrum(&cfg)?, EXIT_OK),
        Command::Eigenfunction { n } => (cmd_eigenfunction(&cfg, *n)?, EXIT_OK),
        Command::Matrices { labels } => (cmd_matrices(&cfg, labels)?, EXIT_OK),
        Command::Verify { suite, identities } => {
            let (body, pass) = cmd_verify(&cfg, suite.as_deref(), identities)?;
            (body, if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    };
    emit(&cfg, &body, stdout)?;
    writeln!(stderr, "{}", cfg.summary())?;
    Ok(code)
}

/// Runs the command line `args` (including the program name), writing to
/// the given streams, and returns the exit code.
pub fn run_with<I, T>(args: I, env_tol: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_ERROR;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, env_tol, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// [`run_with`] on the process streams and environment.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(TOLERANCE_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, env.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}
