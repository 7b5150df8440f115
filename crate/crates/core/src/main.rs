use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use econamp::cli::{cmd_analyze, cmd_cascade, cmd_fit, cmd_simulate, CliError};

#[derive(Parser)]
#[command(
    name = "econamp",
    version,
    about = "Transistor amplifier and economic amplifier calculations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the bias point of a common-emitter stage and report its gains.
    Simulate {
        config: PathBuf,
        /// Economic series to analyse alongside the stage.
        #[arg(long)]
        series: Option<PathBuf>,
    },
    /// Fit a least-squares line between two CSV columns.
    Fit {
        csv: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Compute the economic amplification coefficients of a period series.
    Analyze { csv: PathBuf },
    /// Multiply stage gains.
    Cascade {
        #[arg(required = true, allow_negative_numbers = true)]
        gains: Vec<f64>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Simulate { config, series } => cmd_simulate(&config, series.as_deref()),
        Command::Fit { csv, x, y } => cmd_fit(&csv, &x, &y),
        Command::Analyze { csv } => cmd_analyze(&csv),
        Command::Cascade { gains } => cmd_cascade(&gains),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
