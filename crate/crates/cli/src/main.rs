//! `miquel`: construct, verify, prove and draw Miquel configurations.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! invalid input.

mod document;
mod svg;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};
use miquel_core::ExactRational;

#[derive(Parser, Debug)]
#[command(name = "miquel", version, about = "Exact Miquel configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one configuration and report every object and claim.
    Construct(Shared),
    /// Check the claims on a seeded random sweep.
    Verify {
        #[command(flatten)]
        shared: Shared,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify the claims as polynomial identities.
    Prove {
        /// A single claim id; all claims when omitted.
        #[arg(long)]
        claim: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Draw a configuration as SVG.
    Figure {
        #[command(flatten)]
        shared: Shared,
        /// Canvas side in pixels.
        #[arg(long, default_value_t = 800)]
        size: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Areal,
    Cartesian,
    Bridge,
}

#[derive(Args, Debug, Clone)]
pub struct Shared {
    #[arg(long, value_enum, default_value_t = Mode::Areal)]
    mode: Mode,
    #[arg(long)]
    a2: Option<ExactRational>,
    #[arg(long)]
    b2: Option<ExactRational>,
    #[arg(long)]
    c2: Option<ExactRational>,
    #[arg(long)]
    n: Option<ExactRational>,
    #[arg(long)]
    v: Option<ExactRational>,
    #[arg(long)]
    w: Option<ExactRational>,
    #[arg(long)]
    u: Option<ExactRational>,
    #[arg(long)]
    h: Option<ExactRational>,
    #[arg(long)]
    k: Option<ExactRational>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("check failed: {0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

impl From<miquel_core::GeometryError> for CliError {
    fn from(e: miquel_core::GeometryError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// What a command produced: the text to emit and whether every check held.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
    pub failure: Option<String>,
}

fn init_logging() {
    let plain = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    let mut builder =
        env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"));
    if plain {
        builder
            .write_style(env_logger::WriteStyle::Never)
            .format_timestamp(None);
    }
    builder.init();
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Invalid(format!("cannot write output: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (outcome, output) = match cli.command {
        Command::Construct(shared) => {
            info!("construct {:?}", shared.mode);
            (document::construct(&shared)?, shared.output)
        }
        Command::Verify {
            shared,
            samples,
            seed,
        } => {
            info!("verify {:?}: {samples} samples, seed {seed}", shared.mode);
            (document::verify(shared.mode, samples, seed)?, shared.output)
        }
        Command::Prove { claim, output } => (document::prove(claim.as_deref())?, output),
        Command::Figure { shared, size } => (svg::figure(&shared, size)?, shared.output),
    };
    emit(&outcome.text, output.as_ref())?;
    debug!("wrote {} bytes", outcome.text.len());
    if outcome.pass {
        Ok(())
    } else {
        Err(CliError::Failed(
            outcome
                .failure
                .unwrap_or_else(|| "a claim does not hold".into()),
        ))
    }
}

fn main() -> ExitCode {
    init_logging();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("miquel: {e}");
            ExitCode::from(e.code())
        }
    }
}
