mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use output::Format;
use std::path::PathBuf;
use std::process::ExitCode;

/// Billiards within confocal conics on the one-sheeted hyperboloid.
#[derive(Parser, Debug)]
#[command(name = "hypb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// collared (0<a<b<c) or transverse (b<0<a<c); picks default parameters
    /// when --a/--b/--c are absent.
    #[arg(long)]
    pub table: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance override `key=value` (closure, jacobi, rho, pell, det);
    /// repeatable or comma-separated.
    #[arg(long = "tolerance")]
    pub tolerance: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the billiard map and report closure.
    Simulate(commands::SimulateArgs),
    /// Evaluate periodicity conditions.
    Check(commands::CheckArgs),
    /// Rotation numbers over a grid of caustics.
    Scan(commands::ScanArgs),
    /// Rotation number of one caustic, or the caustic of a rotation number.
    Rotation(commands::RotationArgs),
    /// Polynomial Pell identities.
    Pell(commands::PellArgs),
    /// Liouville foliation census.
    Census(commands::CensusArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Simulate(a) => commands::simulate(&a),
        Command::Check(a) => commands::check(&a),
        Command::Scan(a) => commands::scan(&a),
        Command::Rotation(a) => commands::rotation(&a),
        Command::Pell(a) => commands::pell(&a),
        Command::Census(a) => commands::census(&a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hypb: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
