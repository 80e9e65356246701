// SPDX-License-Identifier: Apache-2.0

//! `graphcodes`: construct graph codes, certify their distances and run the
//! character-sum checks.
//!
//! Exit codes: 0 success, 2 usage, 3 precondition, 4 budget, 5 internal.
//! Failures print one line `error: <category>: <message>` on stderr.

mod commands;
mod family;

use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand};
use graphcodes::Error;

use commands::{ConstructArgs, DistanceArgs, ExportArgs, TableArgs, WeilArgs};

#[derive(Debug, Parser)]
#[command(name = "graphcodes", version, about = "Graph codes under the vertex-deletion metric")]
struct Cli {
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a code and write its descriptor and basis file.
    Construct(ConstructArgs),
    /// Certify the distance of a stored code.
    Distance(DistanceArgs),
    /// Rate/distance table over a list of families.
    Table(TableArgs),
    /// Write one codeword as a matrix or edge list.
    Export(ExportArgs),
    /// Character sums against the Weil bound.
    Weil(WeilArgs),
    /// Quick end-to-end checks.
    Selftest,
}

fn fail(category: &str, msg: &str, code: u8) -> ExitCode {
    let msg = msg
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    eprintln!("error: {category}: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("");
            return fail("usage", first.strip_prefix("error: ").unwrap_or(first), 2);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return fail("usage", "--threads must be positive", 2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail("internal", &e.to_string(), 5);
        }
    }
    let result = match &cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Distance(a) => commands::distance(a),
        Command::Table(a) => commands::table(a),
        Command::Export(a) => commands::export(a),
        Command::Weil(a) => commands::weil(a),
        Command::Selftest => commands::selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn report(e: &Error) -> ExitCode {
    let cat = e.category();
    fail(cat.as_str(), &e.to_string(), cat.exit_code() as u8)
}
