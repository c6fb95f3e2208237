//! `capax`: exact capacity computations from the command line.
//!
//! Machine output is JSON (default) or CSV on stdout. Errors go to stderr as
//! a JSON document; the exit code is 0 on success, 1 on a domain error, 2
//! when a resource limit is hit and 64 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use capax_core::Rat;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod error;

use config::{OutputFormat, Overrides, RunConfig};
use error::{CliError, EXIT_USAGE};

fn rat(s: &str) -> Result<Rat, String> {
    s.parse().map_err(|e: capax_core::exact::ExactError| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "capax", version, about = "Exact ECH capacities, helicity partitions and capacity generation checks")]
struct Cli {
    /// `key = value` file with defaults; flags override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Recorded in every output
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (falls back to CAPAX_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest ECH prefix any command may enumerate
    #[arg(long, global = true)]
    max_prefix: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShellCheck {
    All,
    Family,
    Hypotheses,
    Normalized,
    Separation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderCheck {
    Recognize,
    Generate,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// First COUNT values of the ECH sequence of E(WEIGHTS)
    Ech {
        #[arg(long, value_name = "A1,A2,...")]
        weights: String,
        #[arg(long)]
        count: usize,
    },
    /// ECH embedding factor of E(SRC) into E(DST)
    Embed {
        #[arg(long, value_name = "A1,A2,...")]
        src: String,
        #[arg(long, value_name = "B1,B2,...")]
        dst: String,
        /// Largest ECH index compared
        #[arg(long)]
        jmax: Option<usize>,
    },
    /// Decide whether a family of boundary vectors is an I-collection
    Icheck {
        /// JSON array of {"a": "p/q", "values": {"label": "p/q", ...}}
        #[arg(long, value_name = "PATH")]
        family: PathBuf,
        /// Expected label count for the sufficient conditions
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Boundary helicities of a family of scaled shells
    Shell {
        #[arg(long, value_parser = rat)]
        r: Rat,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rat)]
        a0: Rat,
        /// Number of evenly spaced samples of [-a0, a0]
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ShellCheck::All)]
        check: ShellCheck,
        /// Skip the parameter checks (samples are still validated)
        #[arg(long)]
        unchecked: bool,
    },
    /// Order capacities and generation checks on a finite instance
    Order {
        #[arg(long, value_name = "PATH")]
        instance: PathBuf,
        /// JSON object {capacity: {element: value}}; omitted means empty
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
        #[arg(long, value_enum)]
        check: OrderCheck,
        /// JSON object {element: value}, required for `generate`
        #[arg(long, value_name = "PATH")]
        target: Option<PathBuf>,
    },
    /// Embedding-capacity curve of nested ellipsoids and its kink
    Kink {
        #[arg(long, value_parser = rat)]
        a0: Rat,
        /// `auto` or a comma-separated list of parameters
        #[arg(long, default_value = "auto")]
        grid: String,
        #[arg(long, value_parser = rat)]
        h: Rat,
        #[arg(long, default_value_t = capax_core::kink::DEFAULT_KINK_TRUNCATION)]
        jmax: usize,
        /// Points on each side of a0 for `--grid auto`
        #[arg(long, default_value_t = 10)]
        steps: i64,
        /// Smallest accepted left quotient (default 1/(4 a0))
        #[arg(long, value_parser = rat)]
        threshold: Option<Rat>,
        /// Also write the curve as CSV to this file
        #[arg(long, value_name = "PATH")]
        curve_csv: Option<PathBuf>,
        /// Check the refutation against the volume capacity
        #[arg(long)]
        refute: bool,
    },
    /// Run the acceptance checks
    Selftest {
        /// Comma-separated criterion numbers (default: all)
        #[arg(long, value_name = "IDS")]
        only: Option<String>,
    },
}

pub struct Outcome {
    pub stdout: String,
    pub exit: u8,
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let flags = Overrides {
        default_truncation_j: None,
        max_prefix: cli.max_prefix,
        output_format: cli.format,
        seed: cli.seed,
        threads: cli.threads,
    };
    let env_threads = std::env::var("CAPAX_THREADS").ok();
    let cfg = RunConfig::resolve(cli.config.as_deref(), env_threads, &flags)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::domain("threads", e))?;
    pool.install(|| commands::dispatch(cli.command, &cfg))
}

fn run(argv: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            out.exit
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
