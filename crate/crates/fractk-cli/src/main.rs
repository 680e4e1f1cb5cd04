//! `fractk`: build snowflake prefractals, verify their thickness-type
//! conditions, estimate dimensions and classify function-space questions.
//!
//! Exit codes: 0 on success, 1 when a verification is unsatisfied or a file
//! cannot be written, 2 on malformed input.

mod classify;
mod estimate;
mod geometry;
mod verify;

use std::f64::consts::FRAC_PI_6;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fractk::prefractal::Family;

#[derive(Parser)]
#[command(name = "fractk", version, about = "Snowflake prefractals and function-space index arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write prefractal geometry as JSON or SVG.
    Generate {
        #[command(subcommand)]
        target: geometry::GenerateTarget,
    },
    /// Run finite-scale checks and write a JSON report.
    Verify(verify::VerifyArgs),
    /// Box counting, ring ratios, collar areas and convergence.
    Estimate {
        #[command(subcommand)]
        target: estimate::EstimateTarget,
    },
    /// Decide a function-space question from its parameters.
    Classify(classify::ClassifyArgs),
    /// Render geometry.
    Export {
        #[command(subcommand)]
        target: geometry::ExportTarget,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Classical,
    Square,
}

/// Family selection shared by several subcommands.
#[derive(Args, Clone, Debug)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value = "classical")]
    pub family: FamilyName,
    /// Bump angle of the classical family, in radians.
    #[arg(long, default_value_t = FRAC_PI_6, allow_negative_numbers = true)]
    pub beta: f64,
}

impl FamilyArgs {
    pub fn family(&self) -> Result<Family, CliError> {
        let f = match self.family {
            FamilyName::Classical => Family::Classical { beta: self.beta },
            FamilyName::Square => Family::Square,
        };
        // Validates beta.
        f.xi()?;
        Ok(f)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed arguments or parameters: exit 2.
    Usage(String),
    /// File system failure: exit 1.
    Io(String),
}

impl From<fractk::Error> for CliError {
    fn from(e: fractk::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Successful completion, with or without a satisfied verification.
pub enum Outcome {
    Ok,
    Unsatisfied,
}

/// Writes `content` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn is_svg(path: Option<&PathBuf>) -> bool {
    path.and_then(|p| p.extension()).is_some_and(|e| e.eq_ignore_ascii_case("svg"))
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("FRACTK_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("FRACTK_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    init_threads()?;
    match cli.cmd {
        Command::Generate { target } => geometry::generate(target),
        Command::Verify(args) => verify::run(args),
        Command::Estimate { target } => estimate::run(target),
        Command::Classify(args) => classify::run(args),
        Command::Export { target } => geometry::export(target),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Unsatisfied) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
