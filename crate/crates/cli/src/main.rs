//! `mubar`: Milnor invariants of string links from the command line.
//!
//! Exit status is 0 on success, 1 when a computation fails (an unclosable
//! diagram, a decomposition that does not go through, an invariant that is
//! not well defined), and 2 for usage and parse errors.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mubar", version, about = "Milnor mu-bar invariants, finite type checks and DD diagrams")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Milnor index `(i_1 ... i_n, j)`.
#[derive(Args, Debug, Clone)]
pub struct IndexArgs {
    /// Prefix indices, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub indices: Vec<usize>,
    /// Target component.
    #[arg(long)]
    pub of: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairs {
    /// Marked pairs may join any two strands.
    Any,
    /// Every marked pair joins the same two strands.
    Same,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// mu or mu-bar of a word in the x_ij.
    Mu {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        strands: usize,
        #[command(flatten)]
        index: IndexArgs,
        /// Print the integer mu of the string link.
        #[arg(long, conflicts_with = "bar")]
        raw: bool,
        /// Print mu-bar with its indeterminacy (the default).
        #[arg(long)]
        bar: bool,
    },
    /// Linking matrix and mu-bar values of an event list file.
    Events {
        #[arg(long)]
        file: String,
        /// Only this index; otherwise every index up to `--max-len`.
        #[arg(long, value_delimiter = ',', requires = "of")]
        indices: Option<Vec<usize>>,
        #[arg(long, requires = "indices")]
        of: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Check that the extended invariant vanishes on singular links of a degree.
    Typecheck {
        /// `clasp:<n>` (simple n-commutator clasps) or `dc` (double crossing changes).
        #[arg(long)]
        theory: String,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        degree: usize,
        /// Strand count; defaults to the largest index.
        #[arg(long, env = "MUBAR_STRANDS")]
        strands: Option<usize>,
        /// Longest base word (clasp) in letters.
        #[arg(long, env = "MUBAR_MAX_BASE_LEN", default_value_t = 4)]
        max_base_len: usize,
        /// Most unmarked crossings (dc).
        #[arg(long, env = "MUBAR_MAX_UNMARKED", default_value_t = 2)]
        max_unmarked: usize,
        #[arg(long, value_enum, default_value_t = Pairs::Any)]
        pairs: Pairs,
        /// Sample this many random links instead of sweeping the budget.
        #[arg(long, env = "MUBAR_SAMPLES")]
        samples: Option<u64>,
        #[arg(long, env = "MUBAR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "MUBAR_MAX_COUNTEREXAMPLES", default_value_t = 5)]
        max_counterexamples: usize,
    },
    /// Search for a dc singular link with nonzero extended mu-bar.
    Witness {
        #[arg(long, default_value = "dc")]
        theory: String,
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, env = "MUBAR_STRANDS")]
        strands: Option<usize>,
        /// Most unmarked crossings to try.
        #[arg(long, env = "MUBAR_MAX_UNMARKED", default_value_t = 4)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Pairs::Any)]
        pairs: Pairs,
    },
    /// Enumerate double dating diagrams.
    Census {
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        strands: usize,
    },
    /// Evaluate W(mu-bar) on a DD diagram through sampled realizations.
    Ddeval {
        #[arg(long)]
        diagram: String,
        /// `split` or a symmetric matrix such as `0,1,0;1,0,0;0,0,0`.
        #[arg(long, default_value = "split")]
        class: String,
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long, env = "MUBAR_SAMPLES", default_value_t = 5)]
        samples: usize,
        #[arg(long, env = "MUBAR_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Collect a word into basic commutators modulo a class.
    Collect {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        class: usize,
    },
    /// Write a word as a product of simple commutators.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        level: usize,
        /// Keep going on the residual up to this level (link-homotopy quotient).
        #[arg(long)]
        max_level: Option<usize>,
    },
}

/// Where a run went wrong, which picks the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl Failure {
    pub fn usage(e: impl ToString) -> Self {
        Failure::Usage(e.to_string())
    }

    pub fn compute(e: impl ToString) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Text lines for humans, a report for `--json`.
pub struct Output {
    pub text: Vec<String>,
    pub report: report::RunReport,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command, args) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.report.to_json());
            } else {
                for l in out.text {
                    println!("{l}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, args: Vec<String>) -> Result<Output, Failure> {
    match command {
        Command::Mu { word, strands, index, raw, bar: _ } => commands::mu(args, &word, strands, &index, raw),
        Command::Events { file, indices, of, max_len } => commands::events(args, &file, indices.zip(of), max_len),
        Command::Typecheck { theory, index, degree, strands, max_base_len, max_unmarked, pairs, samples, seed, max_counterexamples } => {
            let budget = commands::TypecheckBudget { strands, max_base_len, max_unmarked, pairs, samples, seed, max_counterexamples };
            commands::typecheck(args, &theory, &index, degree, &budget)
        }
        Command::Witness { theory, degree, index, strands, budget, pairs } => commands::witness(args, &theory, degree, &index, strands, budget, pairs),
        Command::Census { degree, strands } => commands::census(args, degree, strands),
        Command::Ddeval { diagram, class, index, samples, seed } => commands::ddeval(args, &diagram, &class, &index, samples, seed),
        Command::Collect { word, class } => commands::collect(args, &word, class),
        Command::Decompose { word, level, max_level } => commands::decompose(args, &word, level, max_level),
    }
}
