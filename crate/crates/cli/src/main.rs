use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weylspin_cli::{cmd_catalog, cmd_check, cmd_selftest, CheckConfig, InputError, Report, SelftestConfig};

#[derive(Parser)]
#[command(
    name = "weylspin",
    version,
    about = "Exact checks for Lorentzian Weyl structures and weighted spinors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Holonomy families with generator counts and spinor dimensions.
    Catalog {
        /// Family kind, e.g. "g^{w,h}" or "g^k".
        filter: Option<String>,
    },
    /// Run the curvature, Einstein-Weyl and holonomy checks on a structure file.
    Check {
        #[arg(long)]
        structure: PathBuf,
        /// Comma separated suite names; all suites by default.
        #[arg(long)]
        suite: Option<String>,
        /// Comma separated rationals for (v, x1, ..., xn, u).
        #[arg(long, allow_hyphen_values = true)]
        basepoint: Option<String>,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run the algebraic invariant suites and the random curvature audits.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_signature: usize,
    },
}

fn run(cli: &Cli) -> Result<Report, InputError> {
    match &cli.command {
        Command::Catalog { filter } => cmd_catalog(filter.as_deref()),
        Command::Check {
            structure,
            suite,
            basepoint,
            max_order,
        } => {
            let config = CheckConfig::new(structure.clone(), suite.as_deref(), basepoint.as_deref(), *max_order)?;
            cmd_check(&config)
        }
        Command::Selftest { seed, max_signature } => cmd_selftest(&SelftestConfig {
            seed: *seed,
            max_signature: *max_signature,
            ..SelftestConfig::default()
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        }
        None => {
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{}", json);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
