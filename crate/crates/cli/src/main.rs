use std::path::PathBuf;
use std::process::ExitCode;

use axon_cli::commands::{self, CliError};
use axon_cli::config;
use axon_core::sim::ControllerMode;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "axon", version, about = "Axon growth under backstepping and event-triggered boundary control")]
struct Cli {
    /// Allow a PETC period larger than the dwell time.
    #[arg(long, global = true)]
    force_h: bool,
    /// Add the Lyapunov functional column V to time series.
    #[arg(long, global = true)]
    lyapunov: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Continuous,
    Cetc,
    Petc,
}

impl From<Mode> for ControllerMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Continuous => ControllerMode::Continuous,
            Mode::Cetc => ControllerMode::Cetc,
            Mode::Petc => ControllerMode::Petc,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one mode and write timeseries.csv, events.jsonl and metrics.json.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run continuous, CETC and PETC side by side.
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One run per value of a dotted config path, e.g. `trigger.sigma`.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        param: String,
        /// Comma-separated JSON values.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
        #[arg(long, value_enum, default_value = "petc")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print both dwell times and the PETC period in force.
    Dwell {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write the kernel verification report.
    Kernels {
        #[arg(long)]
        config: PathBuf,
        /// Exit with status 4 if any check fails.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn out_dir(explicit: Option<PathBuf>, resolved: &config::Resolved) -> PathBuf {
    explicit.unwrap_or_else(|| PathBuf::from(&resolved.config.experiment.output_dir))
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate { config, mode, out } => {
            let resolved = config::load(&config, cli.force_h)?;
            let dir = out_dir(out, &resolved);
            let m = commands::simulate(&resolved, mode.into(), &dir, cli.lyapunov)?;
            println!("{}", serde_json::to_string_pretty(&m).expect("metrics serialize"));
        }
        Command::Compare { config, out } => {
            let resolved = config::load(&config, cli.force_h)?;
            let dir = out_dir(out, &resolved);
            commands::compare(&resolved, &dir, cli.lyapunov)?;
            print!("{}", std::fs::read_to_string(dir.join("comparison.csv"))?);
        }
        Command::Sweep { config, param, values, mode, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|source| config::ConfigError::Io { path: config.display().to_string(), source })?;
            let base = config::parse_str(&text)?;
            let parsed = values
                .iter()
                .map(|v| serde_json::from_str(v).or_else(|_| Ok(serde_json::Value::String(v.clone()))))
                .collect::<Result<Vec<_>, CliError>>()?;
            let dir = out.unwrap_or_else(|| PathBuf::from(&base.experiment.output_dir));
            print!("{}", commands::sweep(&base, &param, &parsed, mode.into(), &dir, cli.force_h)?);
        }
        Command::Dwell { config } => {
            let resolved = config::load(&config, cli.force_h)?;
            print!("{}", commands::dwell(&resolved));
        }
        Command::Kernels { config, check, out } => {
            let resolved = config::load(&config, cli.force_h)?;
            let dir = out.unwrap_or_else(|| PathBuf::from("."));
            print!("{}", commands::kernels(&resolved, &dir, check)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
