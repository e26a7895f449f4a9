//! `ringsums`: power sums and translation-invariant polynomials over finite
//! rings from the command line.

mod commands;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ringsums::ring::DEFAULT_CAP;
use ringsums::verify::{SuiteOptions, SUITES};
use ringsums::Error;

use commands::{Mode, Report, What};

#[derive(Parser)]
#[command(name = "ringsums", version)]
#[command(about = "Power sums over finite rings: closed forms, enumeration and invariant polynomials")]
struct Cli {
    /// Print JSON instead of tables
    #[arg(long, global = true)]
    json: bool,

    /// Largest ring that may be enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,

    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P_k(T) = sum over r of (T + r)^k
    Powersum {
        /// Ring spec, e.g. "Mat(2,GF(2))"
        #[arg(long)]
        ring: String,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Sum over r of r^k
    Zeta {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        k: u64,
    },
    /// Translation-invariant polynomials of degree at most D
    Invariants {
        #[arg(long)]
        ring: String,
        /// Degree bound; defaults to q*p^m capped at 64
        #[arg(long = "D", visible_alias = "degree")]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = What::Generators)]
        what: What,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Upper bound on k for every check in the suite
        #[arg(long)]
        kmax: Option<u64>,
        /// Degree bound for the invariant-polynomial checks
        #[arg(long = "D", visible_alias = "degree")]
        degree: Option<usize>,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } | Error::Infeasible(_) => 3,
        Error::NoClosedForm(_) => 4,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Powersum { ring, k, mode } => commands::powersum(ring, *k, *mode, cli.cap),
        Command::Zeta { ring, k } => commands::zeta(ring, *k, cli.cap),
        Command::Invariants { ring, degree, what } => commands::invariants(ring, *degree, *what, cli.cap),
        Command::Verify { suite, kmax, degree } => commands::verify(
            suite,
            &SuiteOptions {
                kmax: *kmax,
                degree: *degree,
                jobs: cli.jobs,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON value"));
            } else {
                print!("{}", report.table);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
