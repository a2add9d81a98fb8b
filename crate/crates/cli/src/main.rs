//! `permfree` command-line front end.
//!
//! Exit codes: 0 success, 1 undetected errors (or failed disjointness check),
//! 2 bad input, 3 search exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permfree_core::PhoneticRange;

#[derive(Debug, Parser)]
#[command(name = "permfree", version)]
#[command(about = "Verify, generate and transform length-3 check-digit tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    Full,
    Literal,
}

impl From<RangeArg> for PhoneticRange {
    fn from(r: RangeArg) -> Self {
        match r {
            RangeArg::Full => PhoneticRange::Full,
            RangeArg::Literal => PhoneticRange::Literal,
        }
    }
}

/// Where a table comes from: a file or one of the built-ins.
#[derive(Debug, Args)]
pub struct TableSource {
    /// Table file.
    #[arg(conflicts_with = "builtin")]
    pub table: Option<PathBuf>,

    /// Built-in table: verhoeff-regular, verhoeff-irregular or dunning-t3.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a table against the error classes; exit 1 if any is undetected.
    Verify {
        #[command(flatten)]
        source: TableSource,
        /// Comma-separated class names, or "all".
        #[arg(long, default_value = "all")]
        classes: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "full")]
        phonetic_range: RangeArg,
        /// Count undetected triple errors towards the exit status.
        #[arg(long)]
        fail_on_triple: bool,
        /// Print every undetected pair in text mode.
        #[arg(long)]
        all_pairs: bool,
    },
    /// Print the full detection report; exit 0 regardless of findings.
    Report {
        #[command(flatten)]
        source: TableSource,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum, default_value = "full")]
        phonetic_range: RangeArg,
    },
    /// Print the structural profile as JSON.
    Profile {
        #[command(flatten)]
        source: TableSource,
    },
    /// Search for a permutation-free, phonetic-free table.
    Generate {
        #[arg(long, default_value_t = 10)]
        base: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Wall-clock budget in seconds.
        #[arg(long, default_value_t = 600)]
        time_budget: u64,
        #[arg(long)]
        max_steps: Option<u64>,
        #[arg(long)]
        restart_interval: Option<u64>,
        #[arg(long, value_enum, default_value = "full")]
        phonetic_range: RangeArg,
        /// Run this many seeds (seed, seed+1, ...) in parallel; the first
        /// success wins.
        #[arg(long, default_value_t = 1)]
        threads: u64,
        /// Also write the model as a CPLEX LP file.
        #[arg(long, value_name = "FILE")]
        export_model: Option<PathBuf>,
        /// Output table file (stdout if omitted).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Write the six conjugate tables.
    Conjugates {
        #[command(flatten)]
        source: TableSource,
        /// Fail unless every pair of conjugates shares exactly the diagonal.
        #[arg(long)]
        check_disjoint: bool,
        /// Files are written as <PREFIX>_t0.tbl ... <PREFIX>_t5.tbl.
        #[arg(long, value_name = "PREFIX")]
        out_prefix: Option<String>,
    },
    /// Apply a digit relabeling p = p01 ∘ p29.
    Relabel {
        #[command(flatten)]
        source: TableSource,
        /// "01" / "identity" keeps 0 and 1, "10" swaps them ("01|10" also swaps).
        #[arg(long, default_value = "identity")]
        p01: String,
        /// Images of 2, 3, ..., base-1 as a digit string, or "identity".
        #[arg(long, default_value = "identity")]
        p29: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print the codeword for row R and column C: encode [TABLE] R C.
    Encode {
        #[arg(long, value_name = "NAME")]
        builtin: Option<String>,
        #[arg(num_args = 2..=3, value_name = "ARGS")]
        args: Vec<String>,
    },
    /// Complete a codeword from two digits and their positions.
    Complete {
        #[command(flatten)]
        source: TableSource,
        #[arg(long)]
        pos1: Option<u8>,
        #[arg(long)]
        pos2: Option<u8>,
        #[arg(long)]
        pos3: Option<u8>,
    },
    /// List codewords whose digits include the given ones, e.g. `--digits 01`.
    Containing {
        #[command(flatten)]
        source: TableSource,
        #[arg(long)]
        digits: String,
    },
    /// Issue a category identifier and append it to a log: issue [TABLE] R C.
    Issue {
        #[arg(long, value_name = "NAME")]
        builtin: Option<String>,
        #[arg(long, value_name = "FILE")]
        log: PathBuf,
        #[arg(long)]
        category: usize,
        #[arg(num_args = 2..=3, value_name = "ARGS")]
        args: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            source,
            classes,
            format,
            phonetic_range,
            fail_on_triple,
            all_pairs,
        } => commands::verify(
            &source,
            &classes,
            format,
            phonetic_range.into(),
            fail_on_triple,
            all_pairs,
        ),
        Command::Report {
            source,
            format,
            phonetic_range,
        } => commands::report(&source, format, phonetic_range.into()),
        Command::Profile { source } => commands::profile(&source),
        Command::Generate {
            base,
            seed,
            time_budget,
            max_steps,
            restart_interval,
            phonetic_range,
            threads,
            export_model,
            out,
        } => commands::generate(commands::GenerateArgs {
            base,
            seed,
            time_budget,
            max_steps,
            restart_interval,
            phonetic_range: phonetic_range.into(),
            threads,
            export_model,
            out,
        }),
        Command::Conjugates {
            source,
            check_disjoint,
            out_prefix,
        } => commands::conjugates(&source, check_disjoint, out_prefix.as_deref()),
        Command::Relabel {
            source,
            p01,
            p29,
            out,
        } => commands::relabel(&source, &p01, &p29, out.as_deref()),
        Command::Encode { builtin, args } => commands::encode(builtin.as_deref(), &args),
        Command::Complete {
            source,
            pos1,
            pos2,
            pos3,
        } => commands::complete(&source, [pos1, pos2, pos3]),
        Command::Containing { source, digits } => commands::containing(&source, &digits),
        Command::Issue {
            builtin,
            log,
            category,
            args,
        } => commands::issue(builtin.as_deref(), &log, category, &args),
    };
    match result {
        Ok(status) => status.into(),
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
