//! Thin command-line front-end over [`laneless::cli`].

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use laneless::cli::{self, RunOptions, SweepOptions};
use laneless::Error;

#[derive(Parser)]
#[command(
    name = "laneless",
    version,
    about = "Lane-less traffic simulator with a hybrid feedback-predictive controller"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write CSV/JSON logs (and SVG plots with --plots).
    Run {
        /// Scenario config JSON; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for artifacts.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also emit trajectory/velocity/acceleration/heading SVGs.
        #[arg(long)]
        plots: bool,
        /// Override any config field: --set key=value (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Run even if the gains fail the stability check.
        #[arg(long)]
        allow_unstable: bool,
    },
    /// Run a range of seeds and write a per-seed report CSV.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Inclusive seed range, e.g. 1..100, or a single seed.
        #[arg(long)]
        seeds: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        allow_unstable: bool,
    },
    /// Check the configured gains across operating speeds up to cruise.
    ValidateGains {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

fn parse_overrides(set: &[String]) -> Result<Vec<(String, String)>, Error> {
    set.iter()
        .map(|s| {
            s.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("--set expects key=value, got '{s}'"))
                })
        })
        .collect()
}

/// Inclusive seed range: "A..B", "A..=B", or a single "N".
fn parse_seed_range(s: &str) -> Result<(u64, u64), Error> {
    let parse_one = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| Error::InvalidArgument(format!("invalid seed '{t}'")))
    };
    if let Some((a, b)) = s.split_once("..=").or_else(|| s.split_once("..")) {
        Ok((parse_one(a)?, parse_one(b)?))
    } else {
        let n = parse_one(s)?;
        Ok((n, n))
    }
}

fn dispatch(cmd: Command) -> Result<(), Error> {
    match cmd {
        Command::Run {
            config,
            out,
            seed,
            plots,
            set,
            allow_unstable,
        } => {
            let manifest = cli::cmd_run(&RunOptions {
                config,
                out_dir: out,
                seed,
                overrides: parse_overrides(&set)?,
                plots,
                allow_unstable,
            })?;
            println!("out_dir: {}", manifest.out_dir.display());
            for a in &manifest.artifacts {
                println!("artifact: {}", a.display());
            }
            println!(
                "collision_steps: {} (collision-free: {})",
                manifest.collision_steps, manifest.collision_free
            );
            println!("fallback_steps: {}", manifest.fallback_steps);
            Ok(())
        }
        Command::Sweep {
            config,
            seeds,
            out,
            set,
            allow_unstable,
        } => {
            let report = cli::cmd_sweep(&SweepOptions {
                config,
                out_dir: out,
                seeds: parse_seed_range(&seeds)?,
                overrides: parse_overrides(&set)?,
                allow_unstable,
            })?;
            println!("report: {}", report.report_path.display());
            println!(
                "collision_free_rate: {:.4} over {} seeds",
                report.collision_free_rate,
                report.rows.len()
            );
            Ok(())
        }
        Command::ValidateGains { config, set } => {
            let report = cli::cmd_validate_gains(config.as_deref(), &parse_overrides(&set)?)?;
            print!("{}", report.render());
            if report.pass {
                Ok(())
            } else {
                Err(Error::Config("gain stability check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidArgument(_) => ExitCode::from(2),
                Error::SpawnFailure { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
