//! Command-line front end for the `coset-fusion` library.
//!
//! Exit codes: 0 when every reported check passes, 1 when a check fails or a
//! computation is refused, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;

use commands::{parse_algebra, parse_labels, VerifyArgs};
use config::{Config, OutputFormat};
use output::Outcome;
use suites::Suite;

/// Relative `--out` paths are resolved against this directory when set.
pub const OUT_DIR_ENV: &str = "COSET_FUSION_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Refused(_) => 1,
            Self::Usage(_) | Self::Io { .. } => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coset-fusion",
    version,
    about = "Fusion rings of WZW models and their cosets"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Configuration file of `key = value` lines
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub tolerance_unitary: Option<f64>,
    #[arg(long, global = true)]
    pub tolerance_integrality: Option<f64>,
    #[arg(long, global = true)]
    pub grade_cutoff: Option<u32>,
    #[arg(long, global = true)]
    pub beta_floor: Option<f64>,
    /// Include per-check runtimes in the output
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the integrable weights of su(N)_k
    Weights {
        #[arg(long, value_parser = parse_algebra)]
        algebra: u32,
        #[arg(long)]
        level: u32,
    },
    /// Fuse two weights of su(N)_k
    Fuse {
        #[arg(value_parser = parse_algebra)]
        algebra: u32,
        level: u32,
        /// Dynkin labels, e.g. `1` or `1,0`
        i: String,
        j: String,
    },
    /// Fusion ring of the diagonal coset su(N)_m1 x su(N)_m2 / su(N)_(m1+m2)
    CosetRing { n: u32, m1: u32, m2: u32 },
    /// Run a verification suite
    Verify {
        suite: Suite,
        /// Run over the whole desk-scale range instead of one selection
        #[arg(long)]
        desk_scale: bool,
        #[arg(long, value_parser = parse_algebra, default_value = "su2")]
        algebra: u32,
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m1: u32,
        #[arg(long, default_value_t = 1)]
        m2: u32,
        #[arg(long, default_value_t = 2)]
        l: u32,
        #[arg(long, default_value_t = 2)]
        m: u32,
    },
    /// Branching function of one coset sector
    Branch {
        n: Option<u32>,
        m1: Option<u32>,
        m2: Option<u32>,
        /// Use the su(2)_8 ⊂ su(3)_2 embedding
        #[arg(long)]
        maverick: bool,
        /// `prime/double_prime/diagonal` labels, e.g. `1/1/0` or `1,1/4`
        #[arg(long)]
        sector: String,
        #[arg(long)]
        cutoff: Option<u32>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Weights { .. } => "weights",
            Self::Fuse { .. } => "fuse",
            Self::CosetRing { .. } => "coset-ring",
            Self::Verify { .. } => "verify",
            Self::Branch { .. } => "branch",
        }
    }
}

fn resolve_config(g: &Global) -> Result<Config, CliError> {
    let mut c = match &g.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(v) = g.tolerance_unitary {
        c.tolerance_unitary = v;
    }
    if let Some(v) = g.tolerance_integrality {
        c.tolerance_integrality = v;
    }
    if let Some(v) = g.grade_cutoff {
        c.grade_cutoff = v;
    }
    if let Some(v) = g.beta_floor {
        c.beta_floor = v;
    }
    if let Some(v) = g.format {
        c.output_format = v;
    }
    c.validate()?;
    Ok(c)
}

fn execute(command: &Command, config: &Config) -> Result<Outcome, CliError> {
    match command {
        Command::Weights { algebra, level } => commands::weights(*algebra, *level),
        Command::Fuse {
            algebra,
            level,
            i,
            j,
        } => {
            let i = parse_labels(i).map_err(CliError::Usage)?;
            let j = parse_labels(j).map_err(CliError::Usage)?;
            commands::fuse(*algebra, *level, &i, &j, config)
        }
        Command::CosetRing { n, m1, m2 } => commands::coset_ring(*n, *m1, *m2, config),
        Command::Verify {
            suite,
            desk_scale,
            algebra,
            level,
            n,
            m1,
            m2,
            l,
            m,
        } => commands::verify(
            &VerifyArgs {
                suite: *suite,
                desk_scale: *desk_scale,
                algebra: *algebra,
                level: *level,
                coset: (*n, *m1, *m2),
                torus: (*l, *m),
            },
            config,
        ),
        Command::Branch {
            n,
            m1,
            m2,
            maverick,
            sector,
            cutoff,
        } => {
            let coset = match (n, m1, m2) {
                (Some(n), Some(a), Some(b)) => Some((*n, *a, *b)),
                (None, None, None) => None,
                _ => return Err(CliError::Usage("branch needs all of N M1 M2".into())),
            };
            commands::branch(
                coset,
                *maverick,
                sector,
                cutoff.unwrap_or(config.grade_cutoff),
            )
        }
    }
}

fn out_path(p: &PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() && !dir.is_empty() => PathBuf::from(dir).join(p),
        _ => p.clone(),
    }
}

fn run_parsed(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<bool, CliError> {
    let config = resolve_config(&cli.global)?;
    let mut outcome = execute(&cli.command, &config)?;
    if !cli.global.timings {
        for r in &mut outcome.reports {
            r.runtime = Default::default();
        }
    }
    let text = match config.output_format {
        OutputFormat::Json => output::render_json(&output::document(
            cli.command.name(),
            config.to_json(),
            &outcome,
            cli.global.timings,
        )),
        OutputFormat::Csv => output::render_csv(&outcome),
        OutputFormat::Table => output::render_table(&outcome, cli.global.timings),
    };
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    for r in outcome.reports.iter().filter(|r| !r.passed) {
        let _ = writeln!(stderr, "check failed: {}", r.check);
    }
    match &cli.global.out {
        Some(p) => {
            let path = out_path(p);
            let io = |source| CliError::Io {
                path: path.display().to_string(),
                source,
            };
            if let Some(parent) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(io)?;
            }
            std::fs::write(&path, text).map_err(io)?;
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    Ok(outcome.passed())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return if informational { 0 } else { 2 };
        }
    };
    match run_parsed(&cli, stdout, stderr) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
