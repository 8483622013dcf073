//! Command-line entry point: verifies catalogs of affine groups GV against
//! the exact identity and bound suites.
//!
//! Exit codes: 0 all checks hold, 1 at least one check failed or an instance
//! errored, 2 usage or catalog error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gvchar::cli::catalog::load_catalog;
use gvchar::cli::suite::{run_suite, Suite};
use gvchar::groups::DEFAULT_CAP;

#[derive(Parser)]
#[command(name = "gvchar", version, about = "Exact character-theory checks for affine groups over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over a catalog of instances.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Path to the catalog JSON file.
    #[arg(long)]
    catalog: PathBuf,
    /// Which checks to run: all, identities, bounds, or table-selftest.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Skip instances whose total order exceeds this (never raises the
    /// built-in cap).
    #[arg(long)]
    max_order: Option<usize>,
    /// Output format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let Some(suite) = Suite::parse(&args.suite) else {
        eprintln!("unknown suite '{}'", args.suite);
        return ExitCode::from(2);
    };
    if args.format != "json" && args.format != "csv" {
        eprintln!("unknown format '{}'", args.format);
        return ExitCode::from(2);
    }
    let catalog = match load_catalog(&args.catalog) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let max_order = args.max_order.unwrap_or(DEFAULT_CAP).min(DEFAULT_CAP);
    let report = run_suite(&catalog, suite, max_order);
    let text = if args.format == "csv" {
        report.to_csv()
    } else {
        report.to_json()
    };
    match args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
