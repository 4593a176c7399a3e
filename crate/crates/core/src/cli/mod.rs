//! The `sketchlab` command-line interface.

mod graph_cmd;
mod output;
mod rank_cmd;
mod sketch_cmd;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

pub use output::fmt_float;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sketchlab", version, about = "Streaming sketches, graph reductions and PageRank")]
pub struct Cli {
    /// Seed for every hash function and random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Suppress warnings on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Summarize an `<item> [<delta>]` stream.
    #[command(subcommand)]
    Sketch(sketch_cmd::SketchCommand),
    /// Semi-streaming reductions over an edge list.
    #[command(subcommand)]
    Graph(graph_cmd::GraphCommand),
    /// Rank vertices by PageRank.
    Pagerank(rank_cmd::PagerankArgs),
    /// Pairwise SimRank scores.
    Simrank(rank_cmd::SimrankArgs),
    /// HITS authority and hub scores.
    Hits(rank_cmd::HitsArgs),
    /// Wavelet synopses of a numeric vector.
    #[command(subcommand)]
    Summarize(SummarizeCommand),
    /// Compare results on a graph and its sparsifier.
    #[command(subcommand)]
    Compare(rank_cmd::CompareCommand),
}

#[derive(Debug, Subcommand)]
enum SummarizeCommand {
    /// Haar transform, keep B coefficients, report reconstruction error.
    Haar(HaarArgs),
}

#[derive(Debug, Args)]
struct HaarArgs {
    /// Coefficient budget B, including the average.
    #[arg(long)]
    keep: usize,
    #[command(flatten)]
    input: InputArg,
}

/// Input file; stdin when omitted or `-`.
#[derive(Debug, Args)]
struct InputArg {
    input: Option<PathBuf>,
}

impl InputArg {
    fn read(&self) -> Result<String, Failure> {
        match self.input.as_deref() {
            None => read_stdin(),
            Some(p) if p == Path::new("-") => read_stdin(),
            Some(p) => std::fs::read_to_string(p).map_err(|e| {
                Failure::Lib(Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", p.display()),
                )))
            }),
        }
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| Failure::Lib(Error::Io(e)))?;
    Ok(s)
}

/// Everything a subcommand needs besides its own arguments.
struct Ctx {
    seed: u64,
    quiet: bool,
    out: String,
    warnings: Vec<String>,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn warn(&mut self, s: impl Into<String>) {
        if !self.quiet {
            self.warnings.push(s.into());
        }
    }
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    NotConverged(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::NotConverged(_) => EXIT_NOT_CONVERGED,
            Failure::Lib(e) => match e {
                Error::Parse { .. }
                | Error::Io(_)
                | Error::Codec(_)
                | Error::Validation(_)
                | Error::Shape(_)
                | Error::ModelViolation(_)
                | Error::Domain { .. } => EXIT_INPUT,
                _ => EXIT_USAGE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::NotConverged(m) => format!("convergence: {m}"),
            Failure::Lib(e) => format!("{}: {e}", e.category()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
                    let _ = writeln!(stderr, "error: usage: {first}");
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx {
        seed: cli.seed,
        quiet: cli.quiet,
        out: String::new(),
        warnings: Vec::new(),
    };
    let result = match &cli.command {
        Command::Sketch(c) => sketch_cmd::run(c, &mut ctx),
        Command::Graph(c) => graph_cmd::run(c, &mut ctx),
        Command::Pagerank(a) => rank_cmd::pagerank(a, &mut ctx),
        Command::Simrank(a) => rank_cmd::simrank(a, &mut ctx),
        Command::Hits(a) => rank_cmd::hits(a, &mut ctx),
        Command::Summarize(SummarizeCommand::Haar(a)) => haar(a, &mut ctx),
        Command::Compare(c) => rank_cmd::compare(c, &mut ctx),
    };
    for w in &ctx.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    match result {
        Ok(()) => {
            let _ = stdout.write_all(ctx.out.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn haar(a: &HaarArgs, ctx: &mut Ctx) -> Result<(), Failure> {
    use crate::summaries::*;
    let text = a.input.read()?;
    let mut values = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            values.push(tok.parse::<f64>().map_err(|_| Error::Parse {
                line: ln + 1,
                message: format!("not a number: {tok:?}"),
            })?);
        }
    }
    let t = haar_forward(&values)?;
    let kept = haar_threshold(&t, a.keep)?;
    let approx = haar_inverse(&kept);
    for (i, &c) in kept.coeffs.iter().enumerate() {
        if c != 0.0 || i == 0 {
            ctx.line(format!("coef\t{i}\t{}", fmt_float(c)));
        }
    }
    ctx.line(format!("l2\t{}", fmt_float(l2_error(&values, &approx)?)));
    ctx.line(format!("max_abs\t{}", fmt_float(max_abs_error(&values, &approx)?)));
    ctx.line(format!("max_rel\t{}", fmt_float(max_rel_error(&values, &approx)?)));
    ctx.line(format!("l1\t{}", fmt_float(lp_error(&values, &approx, 1.0)?)));
    Ok(())
}
