//! `premod` command line tool.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{Format, LogBase};

/// Check premodular category data and compute topological entanglement entropy diagnostics.
#[derive(Debug, Parser)]
#[command(name = "premod", version)]
pub struct Cli {
    /// Residual tolerance for axiom checks.
    #[arg(long, global = true, default_value_t = premod::DEFAULT_TOL)]
    pub tol: f64,
    /// Logarithm base for entropies.
    #[arg(long, global = true, value_enum, default_value = "e")]
    pub log_base: LogBase,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    /// Worker threads for batch commands (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axiom residuals; exits 0 only if every check passes.
    Validate { file: PathBuf },
    /// Rank, total dimension, classification and Mueger center.
    Classify { file: PathBuf },
    /// Entropy diagnostics. Boundaries come from `--algebra`, or from enumeration when the
    /// category is pointed.
    Tee {
        file: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Twisted group algebras of a pointed category.
    Algebras {
        file: PathBuf,
        /// Write one algebra file per result into this directory.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One summary row per category: the bundled catalog and/or the given files.
    Conjecture {
        #[arg(long)]
        catalog: bool,
        files: Vec<PathBuf>,
    },
    /// Bundled categories.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    /// Write the canonical file of a bundled category.
    Emit {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
