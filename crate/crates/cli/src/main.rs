//! `codim`: command-line access to the permutation, Mahonian and bound
//! computations in `codim-core`.
//!
//! Exit status is 0 on success, 1 when a verification finds a counterexample,
//! and 2 for usage errors or unmet preconditions.

mod commands;
mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use codim::perm::Permutation;
use codim::verify::Suite;

use render::{finish, Format};

#[derive(Parser, Debug)]
#[command(name = "codim", version, about = "Permutation statistics and codimension bounds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Prefix output with `#` provenance lines (or a `meta` object for JSON).
    #[arg(long, global = true)]
    meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Row of inversion counts I_n(k) for k = 0..n(n-1)/2.
    Mahonian {
        #[arg(long)]
        n: usize,
        /// Cross-check against the pentagonal formula and brute force.
        #[arg(long)]
        check: bool,
    },
    /// Classic and ball-complement bounds side by side.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Least n with (d-1)^{2n} < n!, for each d up to d_max.
    Crossover {
        #[arg(long)]
        d_max: usize,
    },
    /// Run exhaustive property suites.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Comma-separated suite names; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
    },
    /// Left greedy form of a permutation.
    Greedy {
        #[arg(long)]
        perm: Permutation,
    },
    /// One rewriting step, or the full closure with `--closure`.
    Reduce(ReduceArgs),
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Permutation to rewrite once.
    #[arg(long, conflicts_with = "closure")]
    perm: Option<Permutation>,
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum)]
    mode: commands::ModeArg,
    /// Close over every source in S_n instead of rewriting one permutation.
    #[arg(long, requires = "n")]
    closure: bool,
    #[arg(long)]
    n: Option<usize>,
    /// With `--closure`, print only the summary.
    #[arg(long)]
    summary_only: bool,
}

/// How a command failed, which fixes the exit status.
#[derive(Debug)]
pub enum Failure {
    /// A check found a counterexample.
    Check(String),
    /// Bad input or an unmet precondition.
    Usage(String),
}

impl From<codim::Error> for Failure {
    fn from(e: codim::Error) -> Self {
        match e {
            codim::Error::Falsified(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// What a command produced: rendered output plus an optional failure that
/// should still be reported after the output is written.
pub struct Outcome {
    pub rendered: render::Rendered,
    pub status: Option<Failure>,
    /// Lines for stderr.
    pub diagnostics: Vec<String>,
}

fn meta_lines(cli: &Cli) -> Vec<(String, String)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut meta = vec![
        ("tool".to_string(), format!("codim {}", env!("CARGO_PKG_VERSION"))),
        ("args".to_string(), args.join(" ")),
    ];
    if let Ok(v) = std::env::var(codim::limits::ENV_MAX_N) {
        meta.push((codim::limits::ENV_MAX_N.to_string(), v));
    }
    meta.push(("format".to_string(), format!("{:?}", cli.format).to_lowercase()));
    meta
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mahonian { n, check } => commands::mahonian(*n, *check),
        Command::Bounds { d, n_max } => commands::bounds(*d, *n_max),
        Command::Crossover { d_max } => commands::crossover(*d_max),
        Command::Verify { n_max, suites } => commands::verify(*n_max, suites),
        Command::Greedy { perm } => commands::greedy(perm),
        Command::Reduce(args) => commands::reduce(args),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(f) => return report(&f),
    };
    let meta = cli.meta.then(|| meta_lines(&cli));
    let text = finish(outcome.rendered, cli.format, meta);
    let written = match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for line in outcome.diagnostics {
        eprintln!("{line}");
    }
    match outcome.status {
        Some(f) => report(&f),
        None => ExitCode::SUCCESS,
    }
}

fn report(f: &Failure) -> ExitCode {
    match f {
        Failure::Check(msg) => {
            eprintln!("failed: {msg}");
            ExitCode::from(1)
        }
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
