//! `rivercross` command-line front end.
//!
//! Exit status: 0 when the instance is solvable (or the command has no notion
//! of solvability), 2 when it is provably unsolvable or the requested strategy
//! does not apply, 1 on usage errors.

mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(
    name = "rivercross",
    version,
    about = "Solve, count and study missionaries-and-cannibals river crossings"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Leave the timing field out of JSON output so repeated runs are byte-identical.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Graph,
    Matrix,
    Transfer,
}

/// `M C B d`.
#[derive(Args, Debug, Clone, Copy)]
pub struct Instance {
    /// Missionaries.
    pub m: u32,
    /// Cannibals.
    pub c: u32,
    /// Boat capacity.
    pub b: u32,
    /// Safety margin.
    pub d: u32,
}

/// `r B d K`: member `i` has `i + r` missionaries and `i` cannibals.
#[derive(Args, Debug, Clone, Copy)]
pub struct Family {
    /// Missionary surplus r.
    pub r: u32,
    /// Boat capacity.
    pub b: u32,
    /// Safety margin.
    pub d: u32,
    /// Number of terms.
    pub k: usize,
    /// Index of the first member.
    #[arg(long, default_value_t = 1)]
    pub from: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shortest solutions by graph search.
    Solve {
        #[command(flatten)]
        inst: Instance,
        /// Print every shortest solution instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Describe one shortest solution in words.
    Spell {
        #[command(flatten)]
        inst: Instance,
        /// Which solution, in lexicographic order, starting at 0.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Shortest length and number of shortest solutions.
    Count {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = Method::Transfer)]
        method: Method,
    },
    /// The f_i / g_i polynomials of the transfer method.
    Trace {
        #[command(flatten)]
        inst: Instance,
        /// Number of round trips to show; by default runs until a solution appears or the bound is reached.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Solution counts along a family.
    Sequence {
        #[command(flatten)]
        family: Family,
    },
    /// Fit a recurrence and generating function to a family's counts.
    Conjecture {
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Applicable strategies, or the move script of one of them.
    Strategy {
        #[command(flatten)]
        inst: Instance,
        /// Strategy to run, e.g. two-boat or zero-margin-equal-big-boat.
        #[arg(long)]
        name: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Spell { .. } => "spell",
            Command::Count { .. } => "count",
            Command::Trace { .. } => "trace",
            Command::Sequence { .. } => "sequence",
            Command::Conjecture { .. } => "conjecture",
            Command::Strategy { .. } => "strategy",
        }
    }

    fn run(&self) -> anyhow::Result<Outcome> {
        match self {
            Command::Solve { inst, all } => commands::solve(inst, *all),
            Command::Spell { inst, index } => commands::spell(inst, *index),
            Command::Count { inst, method } => commands::count(inst, *method),
            Command::Trace { inst, steps } => commands::trace(inst, *steps),
            Command::Sequence { family } => commands::sequence(family),
            Command::Conjecture { family, max_order } => commands::conjecture(family, *max_order),
            Command::Strategy { inst, name } => commands::strategy(inst, name.as_deref()),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    params: &'a serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
    result: &'a serde_json::Value,
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("RIVER_SOLVE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        anyhow::anyhow!("RIVER_SOLVE_THREADS must be a positive integer, got {raw:?}")
    })?;
    anyhow::ensure!(threads > 0, "RIVER_SOLVE_THREADS must be at least 1");
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let started = Instant::now();
    let outcome = match cli.command.run() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let elapsed = started.elapsed();
    let rendered = match cli.format {
        Format::Text => outcome.text,
        Format::Json => {
            let envelope = Envelope {
                tool: "rivercross",
                version: env!("CARGO_PKG_VERSION"),
                command: cli.command.name(),
                params: &outcome.params,
                elapsed_ms: (!cli.deterministic).then_some(elapsed.as_secs_f64() * 1000.0),
                result: &outcome.result,
            };
            let mut s =
                serde_json::to_string_pretty(&envelope).expect("JSON values always serialize");
            s.push('\n');
            s
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(rendered.as_bytes())
        .and_then(|()| stdout.flush())
        .is_err()
    {
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.status)
}
