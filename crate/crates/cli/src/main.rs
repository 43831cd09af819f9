mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pbswanson::verify::Suite;

use crate::commands::MethodArg;
use crate::config::{resolve, CommonArgs};
use crate::error::CliError;
use crate::output::write_to;

#[derive(Parser, Debug)]
#[command(name = "pbswanson", version)]
#[command(
    about = "Pseudo-bosonic Swanson model: derived constants, eigenstates, bi-coherent states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the derived constants and consistency checks
    Params,
    /// Table of n, E_n and the norm product ||phi_n|| ||psi_n||
    Spectrum,
    /// Run invariant suites and report PASS/FAIL per check
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Evaluate phi(z; x) and psi(z; x) on x in [-6, 6]
    Bicoherent {
        #[arg(long, value_enum, default_value = "closed-form")]
        method: MethodArg,
    },
    /// Write density data for the four preset parameter sets
    Figure1,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = resolve(&cli.common)?;
    let out = cfg.out.clone();
    match cli.command {
        Command::Params => write_to(&cfg, "params", &commands::params(&cfg)?, out.as_deref())?,
        Command::Spectrum => {
            write_to(&cfg, "spectrum", &commands::spectrum(&cfg)?, out.as_deref())?
        }
        Command::Verify { suite } => {
            let outcome = commands::verify(&cfg, suite)?;
            match &out {
                Some(path) => {
                    write_to(&cfg, "verify", &outcome.report, Some(path))?;
                    for line in &outcome.lines {
                        println!("{line}");
                    }
                }
                None if cfg.format == config::Format::Json => {
                    write_to(&cfg, "verify", &outcome.report, None)?
                }
                None => {
                    for line in &outcome.lines {
                        println!("{line}");
                    }
                }
            }
            if !outcome.passed {
                return Ok(1);
            }
        }
        Command::Bicoherent { method } => write_to(
            &cfg,
            "bicoherent",
            &commands::bicoherent(&cfg, method)?,
            out.as_deref(),
        )?,
        Command::Figure1 => {
            let dir = out.unwrap_or_else(|| PathBuf::from("."));
            for path in commands::figure1(&cfg, &dir)? {
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
