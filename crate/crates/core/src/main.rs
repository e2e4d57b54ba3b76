use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dephasim::cli::{self, CliError, MarkovianSide};
use dephasim::config::{OutputFormat, RunConfig};
use dephasim::sdc::SdcPreset;

/// Two-qubit dephasing channels driven by double-peaked Gaussian
/// environments: capacity dynamics, memory diagnostics, and superdense
/// coding under noise.
#[derive(Parser)]
#[command(name = "dephasim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// JSON run configuration; built-in defaults when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides the configuration).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format, csv or json (overrides the configuration).
    #[arg(long, value_name = "FORMAT")]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity dynamics of the five built-in channel combinations.
    Capacity(CommonFlags),
    /// Classify the five built-in combinations against expected verdicts.
    Table1(CommonFlags),
    /// Superdense-coding mutual-information curve for one noise layout.
    Sdc {
        #[command(flatten)]
        common: CommonFlags,
        /// Noise layout: a, b, c, or d.
        #[arg(long, value_name = "LAYOUT")]
        preset: Option<String>,
        /// Side given the near-memoryless amplitude ratio: a, b, or none.
        #[arg(long, value_name = "SIDE", default_value = "none")]
        markovian_side: String,
    },
    /// Memory diagnostics: capacity scan, distinguishability bounds, pair search.
    Measures(CommonFlags),
    /// Monte-Carlo cross-check of the closed forms.
    Oracle {
        #[command(flatten)]
        common: CommonFlags,
        /// Samples per checked quantity.
        #[arg(long, value_name = "N", default_value_t = 1_000_000)]
        samples: u64,
    },
}

fn load(common: &CommonFlags) -> Result<RunConfig, CliError> {
    let format = common
        .format
        .as_deref()
        .map(|s| {
            OutputFormat::parse(s).ok_or_else(|| {
                CliError::Usage(format!("unknown format '{s}' (expected csv or json)"))
            })
        })
        .transpose()?;
    cli::load_run_config(common.config.as_deref(), common.out.as_deref(), format)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Capacity(common) => cli::cmd_capacity(&load(&common)?),
        Command::Table1(common) => cli::cmd_table1(&load(&common)?),
        Command::Sdc {
            common,
            preset,
            markovian_side,
        } => {
            let preset = preset
                .ok_or_else(|| CliError::Usage("sdc requires --preset a|b|c|d".to_string()))?;
            let preset = SdcPreset::parse(&preset).ok_or_else(|| {
                CliError::Usage(format!("unknown preset '{preset}' (expected a, b, c, or d)"))
            })?;
            let side = MarkovianSide::parse(&markovian_side).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown side '{markovian_side}' (expected a, b, or none)"
                ))
            })?;
            cli::cmd_sdc(&load(&common)?, preset, side)
        }
        Command::Measures(common) => cli::cmd_measures(&load(&common)?),
        Command::Oracle { common, samples } => cli::cmd_oracle(&load(&common)?, samples),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
