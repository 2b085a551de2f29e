use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use padic_periods_cli::cache::cache_dir;
use padic_periods_cli::commands::{self, QCheck};
use padic_periods_cli::generators::GeneratorsFile;
use padic_periods_cli::{report_exit_code, CliError, Report};

#[derive(Parser)]
#[command(
    name = "padic-periods",
    version,
    about = "Residual p-adic period checks"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Supersingular cache directory; overrides PADIC_PERIODS_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Record wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Supersingular λ-invariants, Frobenius permutation, Deuring polynomial.
    Supersingular {
        #[arg(long)]
        prime: u64,
    },
    /// The residual pairing matrix and its checks.
    Pairing {
        #[arg(long)]
        prime: u64,
        /// Also emit the (12/d)-th power table.
        #[arg(long)]
        powered: bool,
    },
    /// The period pairing Φ(α, β) of a Schottky group.
    Theta {
        /// JSON file with `p`, `generators` and `balls`.
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
    },
    /// q-expansion, functional-equation and ramification checks.
    Qseries {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(QCheck::NAMES))]
        check: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cache = cache_dir(cli.cache_dir.as_deref());
    match &cli.command {
        Command::Supersingular { prime } => commands::supersingular(*prime, cache.as_deref()),
        Command::Pairing { prime, powered } => {
            commands::pairing(*prime, *powered, cache.as_deref())
        }
        Command::Theta {
            generators,
            alpha,
            beta,
            max_length,
        } => {
            let file = GeneratorsFile::read(generators)?;
            commands::theta(&file, alpha, beta, *max_length)
        }
        Command::Qseries {
            prime,
            check,
            order,
        } => {
            let check = QCheck::parse(check).expect("validated by clap");
            commands::qseries(*prime, check, *order)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if cli.timing {
        report.meta.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    for r in report
        .results
        .iter()
        .filter(|r| r.status == padic_periods_cli::Status::Fail)
    {
        eprintln!("check failed: {}", r.check);
    }
    ExitCode::from(report_exit_code(&report) as u8)
}
