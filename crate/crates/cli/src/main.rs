//! `zcaq`: build, verify and measure 2D Z-complementary array quads.

mod commands;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zcaq::{SearchAlphabet, DEFAULT_TOL};

/// Exit codes besides 0 (success) and 1 (I/O and other runtime errors).
pub mod exit {
    pub const PARSE: u8 = 2;
    pub const INCOMPATIBLE: u8 = 3;
    pub const VERIFY_FAILED: u8 = 4;
    pub const EMPTY_SEARCH: u8 = 5;
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub trait OrExit<T> {
    fn or_exit(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: fmt::Display> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure::new(code, e.to_string()))
    }
}

#[derive(Parser, Debug)]
#[command(name = "zcaq", version, about = "2D Z-complementary array quads from Golay and Z-complementary pairs")]
struct Cli {
    /// Print only one machine-readable summary line per command.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlphabetArg {
    Binary,
    Quaternary,
}

impl From<AlphabetArg> for SearchAlphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Binary => SearchAlphabet::Binary,
            AlphabetArg::Quaternary => SearchAlphabet::Quaternary,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a quad from a Golay pair and a Z-complementary pair.
    GenQuad {
        /// Golay pair: a catalog name or a length.
        #[arg(long)]
        gcp: String,
        /// Z-complementary seed pair (catalog name).
        #[arg(long)]
        zcp: String,
        #[arg(long)]
        out: PathBuf,
        /// Store each array transposed (N x L).
        #[arg(long)]
        transpose: bool,
    },
    /// Check a pair, catalog or quad file against its claimed zone.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Column PMEPR of a quad, or PMEPR of both sequences of a pair.
    Pmepr {
        path: PathBuf,
        #[arg(long, default_value_t = zcaq::pmepr::DEFAULT_OVERSAMPLE)]
        oversample: usize,
        /// Write IEPR curves as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Curves to export: `X<m>:<col>` for quads, `a` or `b` for pairs.
        /// Defaults to column 0 of every array, or both sequences.
        #[arg(long = "column")]
        columns: Vec<String>,
    },
    /// Export |sum of 2D auto-correlations| over all shifts as CSV.
    Surface {
        path: PathBuf,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Exhaustive search for Z-complementary pairs.
    Search {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        min_z: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = AlphabetArg::Binary)]
        alphabet: AlphabetArg,
        /// Report every pair instead of one per symmetry class.
        #[arg(long)]
        all: bool,
        /// Also write the active catalog's entries, so the file can serve as `ZCAQ_CATALOG`.
        #[arg(long)]
        include_builtin: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = output::Printer::new(cli.quiet);
    match cli.command {
        Command::GenQuad { gcp, zcp, out: path, transpose } => {
            commands::gen_quad::run(&out, &gcp, &zcp, &path, transpose)
        }
        Command::Verify { path, tol } => commands::verify::run(&out, &path, tol),
        Command::Pmepr { path, oversample, csv, columns } => {
            commands::pmepr::run(&out, &path, oversample, csv.as_deref(), &columns)
        }
        Command::Surface { path, csv } => commands::surface::run(&out, &path, &csv),
        Command::Search { length, min_z, limit, alphabet, all, include_builtin, out: path } => {
            let spec = zcaq::SearchSpec { length, min_z, alphabet: alphabet.into(), dedupe: !all, limit };
            commands::search::run(&out, &spec, include_builtin, &path)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
