//! Command-line front end.
//!
//! Option precedence: command-line flag, then config file, then built-in
//! default.

pub mod commands;
pub mod config;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use self::config::{parse_config, ConfigFile, RunConfig};

/// Environment variable naming a directory of extra material presets
/// (`<name>.json`).
pub const PRESET_DIR_ENV: &str = "RESONATOR_PRESET_DIR";

#[derive(Debug, Parser)]
#[command(name = "disk-resonator", version, about = "Radial-contour MEMS disk resonator design and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Add FEM frequencies and relative errors to the sweep.
    #[arg(long, global = true)]
    pub with_fem: bool,

    /// FEM element count.
    #[arg(long, global = true, value_name = "N")]
    pub elements: Option<usize>,

    /// Write the SPICE subcircuit here (lumped).
    #[arg(long, global = true, value_name = "PATH")]
    pub netlist: Option<PathBuf>,

    /// Rim displacement spectrum (response; the default).
    #[arg(long, global = true, conflicts_with = "electrical")]
    pub mechanical: bool,

    /// Port-to-port current transmission spectrum (response).
    #[arg(long, global = true)]
    pub electrical: bool,

    /// Target resonance frequency in Hz (design).
    #[arg(long = "target-f0", global = true, value_name = "HZ", allow_negative_numbers = true)]
    pub target_f0: Option<f64>,

    /// Mode index for design (defaults to the first configured mode).
    #[arg(long, global = true, value_name = "I")]
    pub mode: Option<usize>,

    /// Write FEM mode shapes as CSV (modes).
    #[arg(long, global = true, value_name = "PATH")]
    pub shapes: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Characteristic roots and resonance frequencies per mode.
    Modes,
    /// Resonance frequency versus radius.
    Sweep,
    /// Lumped mechanical model and equivalent circuit.
    Lumped,
    /// Harmonic response spectrum.
    Response,
    /// Disk radius for a target frequency.
    Design,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Model(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Validation(_) => "validation",
            CliError::Model(_) => "model",
            CliError::Io { .. } => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Validation(_) => 2,
            _ => 1,
        }
    }

    /// `error[<kind>]: <message>` on one line.
    pub fn line(&self) -> String {
        let msg = self.to_string().split_whitespace().collect::<Vec<_>>().join(" ");
        format!("error[{}]: {msg}", self.kind())
    }
}

/// A failed command plus whatever it printed before failing.
#[derive(Debug)]
pub struct Failure {
    pub error: CliError,
    pub partial_output: String,
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { error: e.into(), partial_output: String::new() }
    }
}

/// Output of a successful command.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Report {
    /// Primary output (stdout or `--out`).
    pub text: String,
    /// Side files such as netlists and shape dumps.
    pub files: Vec<(PathBuf, String)>,
    pub warnings: Vec<String>,
}

/// Loads the config file (if any) and applies flag overrides.
pub fn load_config(cli: &Cli, preset_dir: Option<&Path>) -> Result<RunConfig, CliError> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            parse_config(&text).map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
                other => other,
            })?
        }
        None => ConfigFile::default(),
    };
    let mut config = RunConfig::resolve(file, preset_dir)?;
    if let Some(n) = cli.elements {
        config.elements = n;
    }
    if cli.out.is_some() {
        config.output = cli.out.clone();
    }
    if cli.netlist.is_some() {
        config.netlist = cli.netlist.clone();
    }
    if cli.shapes.is_some() {
        config.shapes = cli.shapes.clone();
    }
    Ok(config)
}

/// Runs one command without touching stdout or the filesystem outputs.
pub fn run(cli: &Cli, preset_dir: Option<&Path>) -> Result<(RunConfig, Report), Failure> {
    let config = load_config(cli, preset_dir)?;
    let mut report = match cli.command {
        Command::Modes => commands::cmd_modes(&config)?,
        Command::Sweep => commands::cmd_sweep(&config, cli.with_fem)?,
        Command::Lumped => commands::cmd_lumped(&config)?,
        Command::Response => commands::cmd_response(&config, cli.electrical)?,
        Command::Design => commands::cmd_design(&config, cli.target_f0, cli.mode)?,
    };
    report.warnings.splice(0..0, config.warnings.iter().cloned());
    Ok((config, report))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Writes a report's side files and primary output; returns what should go
/// to stdout.
pub fn emit(config: &RunConfig, report: &Report) -> Result<String, CliError> {
    for (path, text) in &report.files {
        write_file(path, text)?;
    }
    match &config.output {
        Some(path) => {
            write_file(path, &report.text)?;
            Ok(String::new())
        }
        None => Ok(report.text.clone()),
    }
}

/// Full process behaviour minus the actual exit: returns (exit code,
/// stdout text, stderr text).
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>, preset_dir: Option<&Path>) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            return if code == 0 { (0, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    match run(&cli, preset_dir) {
        Ok((config, report)) => {
            let mut stderr: String = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            match emit(&config, &report) {
                Ok(stdout) => (0, stdout, stderr),
                Err(e) => {
                    stderr.push_str(&e.line());
                    stderr.push('\n');
                    (e.exit_code(), String::new(), stderr)
                }
            }
        }
        Err(Failure { error, partial_output }) => (error.exit_code(), partial_output, format!("{}\n", error.line())),
    }
}
