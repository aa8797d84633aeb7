//! `hyperval` — every valuation, estimate, table, and benchmark behind one
//! binary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain error
//! (composite base, v_p(0), ratios below p, bad schedules), 4 resource
//! bound (sieve/oracle/table ceilings, 128-bit overflow), 5 internal
//! disagreement between algorithms.

mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hyperval::Error;

/// Optional override for the big-integer oracle ceiling (decimal integer).
pub const ORACLE_CEILING_ENV: &str = "HYPERVAL_ORACLE_CEILING";

#[derive(Parser)]
#[command(
    name = "hyperval",
    version,
    about = "Exact p-adic valuations of hyperfactorials H_f(n) = 1^1 2^2 ... n^n",
    after_help = "Set HYPERVAL_ORACLE_CEILING to raise or lower the big-integer oracle ceiling (default 200)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

/// Hyperfactorial algorithm selector for `vphyper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmChoice {
    /// Defining sum over multiples of p
    Direct,
    /// Factorial-valuation closed form (default)
    Theorem1,
    /// Closed form with factorials expanded into floor divisions
    Doublesum,
    /// Big-integer construction plus repeated division
    Oracle,
    /// Every permitted algorithm, cross-checked
    All,
}

/// Factorial valuation method selector for `vpfact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactMethod {
    /// Floor-division series (default)
    Legendre,
    /// Base-p digit-sum identity
    Digitsum,
    /// Big-integer factorial plus repeated division
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RatioChoice {
    /// v_p(n!) / v_p[H_f(n)], limit 0
    Linear,
    /// [v_p(n!)]^2 / v_p[H_f(n)], limit 2/(p-1)
    Quadratic,
}

/// Benchmark algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchAlgorithm {
    Direct,
    Theorem1,
    Doublesum,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Largest exponent e such that p^e divides m
    Vp {
        /// Prime base
        #[arg(short, long)]
        p: u64,
        /// Integer to evaluate (m >= 1)
        #[arg(short, long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Valuation of the factorial n!
    Vpfact {
        /// Prime base
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = FactMethod::Legendre)]
        method: FactMethod,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Valuation of the hyperfactorial H_f(n)
    Vphyper {
        /// Prime base
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = AlgorithmChoice::Theorem1)]
        algorithm: AlgorithmChoice,
        /// JSON output includes the closed form's term breakdown
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Exact valuations next to their asymptotic estimates
    Asym {
        /// Prime base
        #[arg(short, long)]
        p: u64,
        #[arg(short, long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Ratio convergence toward the limits
    Limits {
        /// Prime base
        #[arg(short, long)]
        p: u64,
        /// Comma-separated sample points, ascending (default 100,1000,10000,100000)
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<u64>>,
        #[arg(long, value_enum, default_value_t = RatioChoice::Quadratic)]
        which: RatioChoice,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// CSV data behind the three reference figures (p = 2, n = 1..1000)
    Figure {
        /// 1 = exact hyperfactorial valuation, 2 = (n^2+2n)/2, 3 = [v_2(n!)]^2/2
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the hyperfactorial algorithms against each other
    Bench {
        /// Prime base
        #[arg(short, long)]
        p: u64,
        /// Comma-separated list of n values
        #[arg(long, value_delimiter = ',')]
        ns: Vec<u64>,
        #[arg(long, value_enum, value_delimiter = ',',
              default_values_t = [BenchAlgorithm::Direct, BenchAlgorithm::Theorem1, BenchAlgorithm::Doublesum])]
        algorithms: Vec<BenchAlgorithm>,
        /// Timed runs per cell (minimum 3)
        #[arg(long, default_value_t = 5)]
        repetitions: u32,
        /// Run (p, n) cells on separate threads; timing stays per-cell single-threaded
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Reduced-scale oracle-agreement and equivalence suites
    Selftest {
        /// Smaller grids for a faster pass
        #[arg(long)]
        quick: bool,
    },
}

/// CLI failures, grouped by exit code.
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(err) => err.fmt(f),
            CliError::Usage(message) => message.fmt(f),
            CliError::Io(err) => err.fmt(f),
        }
    }
}

fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Io(_) => 1,
        CliError::Usage(_) => 2,
        CliError::Core(core) => match core {
            Error::NotPrime(_)
            | Error::ValuationOfZero
            | Error::InvalidRange { .. }
            | Error::RatioUndefined { .. }
            | Error::UnsortedSchedule
            | Error::TooFewRepetitions(_) => 3,
            Error::Overflow { .. }
            | Error::SieveCeiling { .. }
            | Error::OracleCeiling { .. }
            | Error::RowCap { .. } => 4,
            Error::Disagreement { .. } => 5,
        },
    }
}

/// Oracle ceiling: environment override or the library default.
pub fn oracle_ceiling() -> Result<u64, CliError> {
    match std::env::var(ORACLE_CEILING_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "{ORACLE_CEILING_ENV} must be a decimal integer, got {text:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(hyperval::DEFAULT_ORACLE_CEILING),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Usage(format!(
            "{ORACLE_CEILING_ENV} is not valid unicode"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Vp { p, m, format } => commands::vp(p, m, format),
        Command::Vpfact {
            p,
            n,
            method,
            format,
        } => commands::vpfact(p, n, method, format),
        Command::Vphyper {
            p,
            n,
            algorithm,
            format,
        } => commands::vphyper(p, n, algorithm, format),
        Command::Asym { p, n, format } => commands::asym(p, n, format),
        Command::Limits {
            p,
            schedule,
            which,
            format,
        } => commands::limits(p, schedule, which, format),
        Command::Figure { which, out } => commands::figure(which, out),
        Command::Bench {
            p,
            ns,
            algorithms,
            repetitions,
            parallel,
            format,
        } => commands::bench(p, &ns, &algorithms, repetitions, parallel, format),
        Command::Selftest { quick } => selftest::run(quick),
    }
}

/// Die quietly when the read end of a pipe closes (`hyperval ... | head`),
/// like standard tools, instead of panicking on EPIPE.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
