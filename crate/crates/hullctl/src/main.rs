use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::{CliError, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "hullctl", version, about = "Cyclic serial codes over finite chain rings: duals, hulls and hull counts")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Cap on the number of codes an exact enumeration may visit, and on
    /// |R|^n for exhaustive scans.
    #[arg(long, env = "HULLCTL_BUDGET", global = true)]
    pub budget: Option<u128>,
    /// Seed for sampled property checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for enumeration and scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Algorithm1,
    Exact,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-cyclotomic cosets modulo n.
    Cosets {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// Basic-irreducible factors of X^n - 1 over the ring's Galois ring.
    Factor {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ring: String,
    },
    /// Parameters, dual, hull and predicates of one code.
    Code {
        #[arg(long)]
        ring: String,
        /// Inline `[[0],[3],[1]]`, a JSON object, or a file holding either.
        #[arg(long)]
        multiset: String,
        /// Length; may be omitted when the multiset JSON carries it.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 0)]
        ell: u32,
    },
    /// Hull parameter tuples of all codes of length n.
    EnumerateHulls {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "algorithm1")]
        method: MethodArg,
        #[arg(long, default_value_t = 0)]
        ell: u32,
    },
    /// Average hull q-dimension.
    Average {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        /// Also enumerate every code and compare.
        #[arg(long)]
        check_exact: bool,
    },
    /// Number of codes whose hull has q-dimension tau.
    Count {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        tau: u64,
    },
    /// Run the exhaustive oracle over a grid file.
    Verify {
        #[arg(long)]
        grid: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    commands::dispatch(cli)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli).and_then(|out| out.emit(cli.format, cli.out.as_deref())) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("hullctl: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
