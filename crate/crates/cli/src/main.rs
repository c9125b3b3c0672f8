//! `pvlab`: present values, IRRs, amortization schedules, and recursion
//! error experiments from cashflow CSVs and loan spec files.
//!
//! Exit codes: 0 success, 1 input error (unreadable or malformed input,
//! bad arguments), 2 numerical failure (no IRR bracket, iteration budget
//! exhausted, and similar).

mod commands;
mod input;
mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pvlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Present value and net present value of a cashflow CSV.
    Pv {
        #[command(flatten)]
        common: CommonArgs,
        /// Computation scheme(s) to report.
        #[arg(long, value_enum, default_value_t = SchemeArg::All)]
        scheme: SchemeArg,
    },
    /// Internal rate of return of a cashflow CSV.
    Irr {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Level-yield amortization schedule of a loan spec file.
    Schedule {
        #[command(flatten)]
        common: CommonArgs,
        /// Cell rounding: a published-style cents ledger, or full
        /// working precision.
        #[arg(long, value_enum, default_value_t = RoundingArg::Cents)]
        rounding: RoundingArg,
        /// Carrying-amount engine for column (7).
        #[arg(long, value_enum, default_value_t = EngineArg::Forward)]
        engine: EngineArg,
    },
    /// Error-growth experiment comparing recursion schemes on a cashflow CSV.
    Errors {
        #[command(flatten)]
        common: CommonArgs,
        /// Scheme(s) to measure against the reference.
        #[arg(long, value_enum, default_value_t = SchemeArg::All)]
        scheme: SchemeArg,
        /// Reference series the schemes are compared against.
        #[arg(long, value_enum, default_value_t = ReferenceArg::Direct)]
        reference: ReferenceArg,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Cashflow CSV (`period,amount`) or, for `schedule`, a key=value
    /// loan spec file.
    input: std::path::PathBuf,
    /// Per-period rate; when omitted, the IRR is solved from the input.
    #[arg(long, allow_negative_numbers = true)]
    rate: Option<f64>,
    /// IRR bracket tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    /// Output format.
    #[arg(long, short = 'f', value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Direct,
    Forward,
    Backward,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RoundingArg {
    None,
    Cents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReferenceArg {
    Direct,
    Oracle,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful outcomes, not input errors.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = err.print();
                    0
                }
                _ => {
                    let _ = err.print();
                    1
                }
            };
            std::process::exit(code);
        }
    };
    if let Err(err) = commands::run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
