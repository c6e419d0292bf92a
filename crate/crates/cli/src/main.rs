//! `colmatch` command-line front end.
//!
//! Data goes to stdout, logs to stderr (`RUST_LOG` controls verbosity).
//! Exit codes: 0 success, 2 input error, 3 provider error, 4 missing embeddings.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use colmatch::evaluation::ResultFormat;

use crate::config::ProviderKind;

#[derive(Debug, Parser)]
#[command(name = "colmatch", version, about = "Embedding-based column matching across databases")]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,
    #[command(subcommand)]
    command: Command,
}

/// Flags accepted by every subcommand; they override the config file.
#[derive(Debug, Default, Clone, Args)]
pub struct SharedArgs {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Embedding store directory.
    #[arg(long, global = true, value_name = "PATH")]
    pub store: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub provider: Option<ProviderKind>,
    /// Base URL of a remote embedding service.
    #[arg(long, global = true, value_name = "URL")]
    pub endpoint: Option<String>,
    /// Embedding dimension [default: 384].
    #[arg(long, global = true, value_name = "N")]
    pub dim: Option<usize>,
    /// Unique values per provider batch [default: 10000].
    #[arg(long, global = true, value_name = "N")]
    pub chunk_size: Option<usize>,
    /// Candidates kept per reference column [default: 3].
    #[arg(long, global = true, value_name = "N")]
    pub k: Option<usize>,
    /// Value-score floor for metadata re-ranking [default: 0.4].
    #[arg(long, global = true, value_name = "F", allow_negative_numbers = true)]
    pub threshold: Option<f64>,
    /// values, metadata or names.
    #[arg(long, global = true, value_parser = ["values", "metadata", "names"])]
    pub mode: Option<String>,
    /// Distractor sampling seed for `scale`.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// json, csv or table.
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<ResultFormat>,
    /// Recompute embeddings that are already stored.
    #[arg(long, global = true)]
    pub force: bool,
}

fn parse_format(s: &str) -> Result<ResultFormat, String> {
    s.parse().map_err(|e: colmatch::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print per-column type and value counts for one database directory.
    Profile {
        path: PathBuf,
        /// Database name (default: directory name).
        #[arg(long)]
        name: Option<String>,
    },
    /// Embed every column of the configured databases into the store.
    Embed,
    /// Match the configured reference columns against the unknown databases.
    Match {
        /// Write the report here instead of stdout.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Score a match report against a ground-truth file.
    Eval {
        report: PathBuf,
        truth: PathBuf,
        /// Comma-separated k values (default: 1 up to the report's k).
        #[arg(long, value_delimiter = ',', value_name = "K,..")]
        ks: Option<Vec<usize>>,
    },
    /// Accuracy as random distractor columns are added to the pool.
    Scale {
        /// Comma-separated distractor counts; `all` means the whole pool.
        #[arg(long, value_delimiter = ',', required = true, value_name = "N,..")]
        counts: Vec<String>,
        /// Ground-truth file (overrides `truth` in the config).
        #[arg(long, value_name = "PATH")]
        truth: Option<PathBuf>,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<colmatch::Error>() {
        Some(e) if e.is_provider_error() => 3,
        Some(colmatch::Error::MissingEmbeddings(_)) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let shared = cli.shared;
    let jobs = shared.jobs;
    let task = move || match cli.command {
        Command::Profile { path, name } => commands::profile(&path, name.as_deref(), &shared),
        Command::Embed => commands::embed(&shared),
        Command::Match { output } => commands::run_match(&shared, output.as_deref()),
        Command::Eval { report, truth, ks } => commands::eval(&report, &truth, ks, &shared),
        Command::Scale { counts, truth } => commands::scale(&counts, truth, &shared),
    };
    match jobs {
        Some(0) => anyhow::bail!("--jobs must be >= 1"),
        Some(n) => colmatch::par::with_jobs(n, task),
        None => task(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("warn")),
        )
        .init();

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
