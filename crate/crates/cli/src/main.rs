//! `casimir-thermo`: temperature and separation sweeps, figure presets and a
//! verification suite for the thermal Casimir engine.

mod config;
mod run;
mod table;
mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Command, Format, MaterialArg, Quantity, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<casimir_core::Error> for CliError {
    fn from(e: casimir_core::Error) -> Self {
        match e {
            casimir_core::Error::NonFinite(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VERIFY: u8 = 3;

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "casimir-thermo", version, about = "Thermal Casimir sweeps, figures and verification")]
struct Cli {
    /// What to run.
    #[arg(value_enum)]
    command: Command,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output path. CSV and SVG get `.csv` and `.svg` extensions; verify
    /// writes its JSON summary here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plate separation (m).
    #[arg(long)]
    a: Option<f64>,
    /// Temperature (K) for separation sweeps.
    #[arg(long)]
    temperature: Option<f64>,
    /// Material preset name or path to a JSON material file.
    #[arg(long)]
    material: Option<String>,
    /// Quantity for sweep-T and sweep-a.
    #[arg(long, value_enum)]
    quantity: Option<Quantity>,
    /// Number of sweep points.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Evaluate without the thread pool.
    #[arg(long)]
    sequential: bool,
    /// Verify: skip the 120-point temperature sweeps.
    #[arg(long)]
    quick: bool,
    /// Verify: report the regime guard for this constant relaxation rate (rad/s).
    #[arg(long)]
    constant_gamma: Option<f64>,
    /// Verify: use this value of ζ(3) in the checks that depend on it.
    #[arg(long)]
    zeta3: Option<f64>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(c) = cfg.command {
        if c != cli.command {
            eprintln!("note: command {:?} in config overridden by {:?}", c, cli.command);
        }
    }
    cfg.command = Some(cli.command);
    if let Some(p) = &cli.out {
        cfg.output_path = Some(p.clone());
    }
    if let Some(a) = cli.a {
        cfg.a = Some(a);
    }
    if let Some(t) = cli.temperature {
        cfg.temperature = Some(t);
    }
    if let Some(m) = &cli.material {
        cfg.material = Some(MaterialArg::from_flag(m)?);
    }
    if let Some(q) = cli.quantity {
        cfg.quantity = Some(q);
    }
    if let Some(f) = cli.format {
        cfg.format = Some(f);
    }
    if let Some(r) = cli.rel_tol {
        cfg.tolerances.rel_tol = Some(r);
    }
    if cli.sequential {
        cfg.tolerances.sequential = Some(true);
    }
    if cli.quick {
        cfg.quick = true;
    }
    if let Some(g) = cli.constant_gamma {
        cfg.constant_gamma = Some(g);
    }
    if let Some(z) = cli.zeta3 {
        cfg.constants.zeta3 = Some(z);
    }
    if let Some(n) = cli.points {
        match cli.command {
            Command::SweepA => {
                let mut r = cfg.a_range.unwrap_or(config::RangeSpec::log(0.3e-6, 3e-6, n));
                r.points = n;
                cfg.a_range = Some(r);
            }
            Command::Verify => return Err(CliError::Usage("--points does not apply to verify".into())),
            _ => {
                let default = if matches!(cli.command, Command::SweepT) {
                    config::RangeSpec::log(10.0, 1200.0, n)
                } else {
                    config::RangeSpec::log(1.0, 1200.0, n)
                };
                let mut r = cfg.t_range.unwrap_or(default);
                r.points = n;
                cfg.t_range = Some(r);
            }
        }
    }
    Ok(cfg)
}

fn with_extension(path: &Path, ext: &str) -> PathBuf {
    if path.extension().is_some_and(|e| e == ext) {
        path.to_path_buf()
    } else {
        path.with_extension(ext)
    }
}

fn sweep(cfg: &RunConfig, command: Command) -> Result<u8, CliError> {
    let format = cfg.format();
    if format.svg() && cfg.output_path.is_none() {
        return Err(CliError::Usage("SVG output needs --out".into()));
    }
    let result = run::run_sweep(cfg, command)?;
    match &cfg.output_path {
        Some(path) => {
            if format.csv() {
                fs::write(with_extension(path, "csv"), result.to_csv())?;
            }
            if format.svg() {
                fs::write(with_extension(path, "svg"), result.to_svg())?;
            }
        }
        None => std::io::stdout().write_all(result.to_csv().as_bytes())?,
    }
    if result.all_converged() {
        Ok(0)
    } else {
        eprintln!(
            "warning: {} point(s) did not reach the requested tolerance; see the converged columns",
            result.unconverged()
        );
        Ok(EXIT_NUMERICAL)
    }
}

fn verify(cfg: &RunConfig) -> Result<u8, CliError> {
    let report = verify::run_verify(cfg)?;
    let json = serde_json::to_string(&report).map_err(|e| CliError::Numerical(e.to_string()))?;
    print!("{}", report.table());
    println!("{json}");
    if let Some(path) = &cfg.output_path {
        fs::write(path, format!("{json}\n"))?;
    }
    Ok(if report.failed == 0 { 0 } else { EXIT_VERIFY })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = build_config(&cli).and_then(|cfg| match cli.command {
        Command::Verify => verify(&cfg),
        c => sweep(&cfg, c),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
