use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use relhartree_cli::config::{parse_config, ConfigError, RunConfig};
use relhartree_cli::presets::{preset_text, PRESETS};
use relhartree_cli::runner::{self, RunReport};

#[derive(Parser)]
#[command(name = "relhartree", version, about = "Semi-relativistic Hartree simulator and lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a datum and record per-sample diagnostics.
    Simulate(Common),
    /// Evolve with the phase correction and compare raw and corrected profiles.
    Scattering(Common),
    /// Free-flow decay and truncated-kernel tables.
    Lindecay(Common),
    /// Compare fast paths against the brute-force references.
    Oracle(Common),
    /// List the shipped presets.
    Presets,
}

#[derive(Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Use a shipped configuration instead of a file.
    #[arg(long)]
    preset: Option<String>,
    /// Output directory; overrides `outputs.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
}

impl Common {
    fn load(&self) -> anyhow::Result<RunConfig> {
        let text = match (&self.config, &self.preset) {
            (Some(path), _) => std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))
                .map_err(|e| anyhow::Error::new(ConfigError::Parse(format!("{e:#}"))))?,
            (None, Some(name)) => preset_text(name)?.to_string(),
            (None, None) => String::new(),
        };
        let mut config = parse_config(&text)?;
        if let Some(out) = &self.out {
            config.outputs.dir = out.clone();
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        config.validate()?;
        Ok(config)
    }
}

fn print_report(report: &RunReport) {
    for (key, value) in &report.summary {
        println!("{key} = {value:.6e}");
    }
    println!(
        "wrote {} files to {} in {:.2} s",
        report.manifest.files.len() + 1,
        report.out_dir.display(),
        report.manifest.wall_time_seconds
    );
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Presets => {
            for (name, command, _) in PRESETS {
                println!("{name:<24} {command}");
            }
        }
        Command::Simulate(c) => print_report(&runner::run_simulate(&c.load()?)?.report),
        Command::Scattering(c) => print_report(&runner::run_scattering(&c.load()?)?.report),
        Command::Lindecay(c) => print_report(&runner::run_lindecay(&c.load()?)?.report),
        Command::Oracle(c) => {
            let outcome = runner::run_oracle_suite(&c.load()?)?;
            for check in &outcome.checks {
                println!("{:<28} {:.3e} (tol {:.0e})", check.name, check.worst, check.tolerance);
            }
            print_report(&outcome.report);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(runner::exit_code(&err) as u8)
        }
    }
}
