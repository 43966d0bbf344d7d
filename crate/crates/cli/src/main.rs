//! Command-line front end: basis enumeration, truncated sumsets, order and
//! stability experiments, obstruction scans, density profiles, and the
//! one-shot verification suite.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error.

mod report;
mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sumsetlab_core::{
    cross_check_obstruction, default_grid, default_h_max, density_profile, empirical_order,
    hfold, modular_obstruction, stability_experiment, verify_legendre, BasisSpec,
};

const GRAMMAR: &str = "\
Basis spec grammar:
  poly:<k>                k-gonal numbers, k >= 3 (poly:3 triangular, poly:4 squares)
  set:<a,b,c>             explicit finite set, strictly increasing (`set:` is empty)
  aug:<base>+set:<a,b,c>  base extended by a finite set; <base> is poly: or set:
";

#[derive(Parser)]
#[command(
    name = "sumsetlab",
    version,
    about = "Truncated h-fold sumset arithmetic and interval verification for integer bases",
    after_help = GRAMMAR
)]
struct Cli {
    /// Worker threads for the sumset kernels; the SUMSETLAB_THREADS
    /// environment variable overrides this. Results are bit-identical
    /// whatever the degree.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Structured)]
    format: Format,

    /// Write the report here instead of stdout. For `sumset` this is the
    /// binary bitmap path and the summary still prints.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Structured,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// List the elements of a basis up to a bound.
    #[command(name = "enum")]
    Enumerate {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        bound: u64,
    },
    /// Compute the truncated h-fold sumset of a basis.
    Sumset {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 1)]
        h: u32,
    },
    /// Find the least h whose h-fold sumset covers [0, bound].
    Order {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        bound: u64,
        /// Fold ceiling; defaults to rank+3 for polygonal bases, 8 otherwise.
        #[arg(long)]
        hmax: Option<u32>,
    },
    /// Residue classes mod m that h-fold sums can never reach.
    Obstruct {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        h: u32,
        #[arg(long = "mod")]
        modulus: u64,
        /// Also cross-check the certificate against the exhaustive bitmap
        /// on [0, bound].
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Counting-function profile of an h-fold sumset on a geometric grid.
    Density {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        bound: u64,
    },
    /// Compare the empirical order of a basis with the order after
    /// augmenting it by every integer below a cutoff.
    Stability {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        cutoff: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        hmax: Option<u32>,
    },
    /// Exhaustively check the four-or-five-term polygonal representation
    /// above the 28m³ cutoff.
    Legendre {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Run the whole verification suite; exit 0 iff every check passes.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Scale::Quick)]
        scale: Scale,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] sumsetlab_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// Ok(false) means a verification check failed (exit 1); errors are usage
// problems (exit 2).
fn run(cli: Cli) -> Result<bool, CliError> {
    init_threads(cli.threads)?;
    let format = cli.format;
    match cli.command {
        Command::Enumerate { basis, bound } => {
            let spec: BasisSpec = basis.parse()?;
            let members = spec.enumerate(bound)?;
            emit(&cli.out, report::enumeration(&spec, bound, &members, format))?;
            Ok(true)
        }
        Command::Sumset { basis, bound, h } => {
            let spec: BasisSpec = basis.parse()?;
            let bm = hfold(&spec.to_bitmap(bound)?, h)?;
            if let Some(path) = &cli.out {
                let mut w = BufWriter::new(File::create(path)?);
                bm.write_to(&mut w)?;
                w.flush()?;
            }
            print!("{}", report::sumset_summary(&spec, h, &bm, cli.out.as_deref(), format)?);
            Ok(true)
        }
        Command::Order { basis, bound, hmax } => {
            let spec: BasisSpec = basis.parse()?;
            let h_max = hmax.unwrap_or_else(|| default_h_max(&spec));
            let order_report = empirical_order(&spec, bound, h_max)?;
            emit(&cli.out, report::order(&order_report, format))?;
            Ok(true)
        }
        Command::Obstruct { basis, h, modulus, bound } => {
            let spec: BasisSpec = basis.parse()?;
            let obstruction = modular_obstruction(&spec, h, modulus)?;
            let cross = match bound {
                Some(b) => {
                    let bm = hfold(&spec.to_bitmap(b)?, h)?;
                    Some((b, cross_check_obstruction(&obstruction, &bm)))
                }
                None => None,
            };
            emit(&cli.out, report::obstruction(&spec, &obstruction, cross, format))?;
            Ok(true)
        }
        Command::Density { basis, h, bound } => {
            let spec: BasisSpec = basis.parse()?;
            let profile = density_profile(&spec, h, bound, &default_grid(bound))?;
            emit(&cli.out, report::density(&spec, &profile, format))?;
            Ok(true)
        }
        Command::Stability { basis, cutoff, bound, hmax } => {
            let spec: BasisSpec = basis.parse()?;
            let h_max = hmax.unwrap_or_else(|| default_h_max(&spec));
            let stability = stability_experiment(&spec, cutoff, bound, h_max)?;
            emit(&cli.out, report::stability(&stability, format))?;
            Ok(true)
        }
        Command::Legendre { m, bound } => {
            let check = verify_legendre(m, bound)?;
            emit(&cli.out, report::legendre(&check, format))?;
            Ok(check.passed)
        }
        Command::VerifyPaper { scale } => {
            let outcomes = verify::run_all(scale);
            let mut all_passed = true;
            for outcome in &outcomes {
                println!(
                    "{}: {} ({:.2}s)",
                    outcome.name,
                    if outcome.passed { "pass" } else { "FAIL" },
                    outcome.seconds
                );
                if !outcome.passed {
                    all_passed = false;
                    for line in outcome.detail.lines() {
                        println!("    {line}");
                    }
                }
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            println!(
                "verify-paper: {} ({}/{} checks, scale={})",
                if all_passed { "pass" } else { "FAIL" },
                passed,
                outcomes.len(),
                match scale {
                    Scale::Quick => "quick",
                    Scale::Full => "full",
                }
            );
            Ok(all_passed)
        }
    }
}

fn init_threads(flag: Option<usize>) -> Result<(), CliError> {
    let from_env = match std::env::var("SUMSETLAB_THREADS") {
        Ok(text) => Some(text.parse::<usize>().map_err(|_| {
            CliError::Usage(format!("SUMSETLAB_THREADS must be a positive integer, got `{text}`"))
        })?),
        Err(_) => None,
    };
    // The environment variable overrides the flag.
    let threads = from_env.or(flag);
    match threads {
        None => Ok(()),
        Some(0) => Err(CliError::Usage("thread count must be at least 1".to_string())),
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))?;
            Ok(())
        }
    }
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
