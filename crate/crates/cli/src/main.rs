use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qss_core::protocol::{Evaluation, DEFAULT_TRIALS};
use qss_cli::commands::{load_config, run_report, ssqi_report};
use qss_cli::figures::{write_figure, FigureId, DEFAULT_STEPS};
use qss_cli::sweep::{check_rows, run_sweep, write_rows, Evaluations, SweepParam, SweepSpec};
use qss_cli::tables::{table_rows, write_table, TableParams, TABLE_TOLERANCE};
use qss_cli::validate::{run_validation, CheckName, ValidateOptions, DEFAULT_TOLERANCE};
use qss_cli::{CliError, CliResult};

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "qss", version, about = "Noisy multiparty quantum secret sharing: runs, sweeps, figure data and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct McFlags {
    /// Add a Monte Carlo column
    #[arg(long)]
    mc: bool,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one configuration and print its error report as JSON
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Sweep one parameter of a configuration and write CSV rows
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        vary: SweepParam,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: Option<usize>,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        mc: McFlags,
    },
    /// Write the curves of one figure and a manifest into a directory
    Figure {
        id: FigureId,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        #[command(flatten)]
        mc: McFlags,
    },
    /// Compare all 24 three-party damping tuples with their closed forms
    Tables {
        #[arg(long, conflicts_with = "gammas")]
        gamma: Option<f64>,
        /// Per-hop strengths as gamma_A,gamma_B,gamma_C
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the simulation-versus-closed-form battery
    Validate {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Comma-separated subset of checks
        #[arg(long, value_delimiter = ',')]
        only: Vec<CheckName>,
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Teleportation fidelity with and without the configured code
    Ssqi {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        phi: f64,
    },
}

fn output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn mc_of(flags: &McFlags) -> Option<(u64, u64)> {
    flags.mc.then_some((flags.trials, flags.seed))
}

fn execute(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Run { config } => {
            println!("{}", run_report(&load_config(&config)?)?);
        }
        Command::Sweep {
            config,
            vary,
            from,
            to,
            steps,
            out,
            mc,
        } => {
            let base = load_config(&config)?;
            let monte_carlo = match base.evaluation {
                Evaluation::MonteCarlo { trials, seed } if !mc.mc => Some((trials, seed)),
                _ => mc_of(&mc),
            };
            let spec = SweepSpec::new(vary, from, to, steps, base)?;
            let rows = run_sweep(&spec, Evaluations { exact: true, monte_carlo })?;
            check_rows(&rows)?;
            write_rows(output(&out)?, &rows)?;
        }
        Command::Figure { id, out_dir, steps, mc } => {
            for path in write_figure(id, &out_dir, steps, mc_of(&mc))? {
                println!("{}", path.display());
            }
        }
        Command::Tables { gamma, gammas, out } => {
            let params = match gammas.as_deref() {
                Some(&[a, b, c]) => TableParams::PerHop { a, b, c },
                Some(other) => {
                    return Err(CliError::Input(format!("--gammas takes three values, got {}", other.len())))
                }
                None => TableParams::Uniform(gamma.unwrap_or(0.3)),
            };
            let rows = table_rows(params)?;
            write_table(output(&out)?, &rows)?;
            let worst = rows.iter().map(|r| r.abs_diff()).fold(0.0, f64::max);
            if worst.is_nan() || worst > TABLE_TOLERANCE {
                return Err(CliError::Check(format!(
                    "closed form and simulation differ by {worst:.3e} (limit {TABLE_TOLERANCE:.0e})"
                )));
            }
        }
        Command::Validate { tolerance, only, gamma } => {
            let outcomes = run_validation(&ValidateOptions { tolerance, only, gamma })?;
            for o in &outcomes {
                println!("{o}");
            }
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name.label()).collect();
            if !failed.is_empty() {
                return Err(CliError::Check(format!("failed checks: {}", failed.join(", "))));
            }
        }
        Command::Ssqi { config, theta, phi } => {
            let report = ssqi_report(&load_config(&config)?, theta, phi)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).map_err(|e| CliError::Input(e.to_string()))?
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
