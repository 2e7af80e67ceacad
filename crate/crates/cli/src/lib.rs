//! The `sawlang` command line: validate → enumerate → decompose → grammar →
//! series → μ.
//!
//! Exit codes: 0 success, 1 invalid input or failed pipeline step, 2 ball
//! guard or radius problems, 3 `verify` mismatch, 4 I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;

pub use commands::Context;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Guard(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<sawlang::OracleError> for CliError {
    fn from(e: sawlang::OracleError) -> Self {
        use sawlang::OracleError as E;
        match e {
            E::Guard { .. } | E::OutsideBall { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<sawlang::decomposition::DecompError> for CliError {
    fn from(e: sawlang::decomposition::DecompError) -> Self {
        use sawlang::decomposition::DecompError as E;
        match e {
            E::IncreaseRadius { .. } | E::EndSizeLikelyThree { .. } => {
                CliError::Guard(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<sawlang::input::InputError> for CliError {
    fn from(e: sawlang::input::InputError) -> Self {
        match e {
            sawlang::input::InputError::Decomp(d) => d.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<sawlang::GraphError> for CliError {
    fn from(e: sawlang::GraphError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<sawlang::grammar::GrammarError> for CliError {
    fn from(e: sawlang::grammar::GrammarError) -> Self {
        match e {
            sawlang::grammar::GrammarError::Decomp(d) => d.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<sawlang::series::SeriesError> for CliError {
    fn from(e: sawlang::series::SeriesError) -> Self {
        match e {
            sawlang::series::SeriesError::Grammar(g) => g.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sawlang", version, about = "Self-avoiding walk grammars and connective constants")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Graph description file (JSON, mode finite, cayley or quotient).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Ball radius for oracle commands; for decomposition commands the
    /// quotient radius (found automatically when omitted).
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Maximal walk length.
    #[arg(long, global = true)]
    pub maxlen: Option<usize>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Width bound for the reported μ interval. The radius of convergence
    /// is isolated to width 1e-9 or finer regardless.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Oracle threads; 1 keeps everything on the calling thread.
    #[arg(long, global = true, default_value_t = 1)]
    pub parallel: usize,
    /// Largest radius tried when searching for a closing quotient.
    #[arg(long, global = true, default_value_t = 24)]
    pub max_radius: usize,
    /// Progress messages on standard error; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the input and report its basic shape.
    Validate,
    /// SAW counts c_0..c_N from the oracle (TSV n, c_n).
    Count,
    /// SAW label words up to length N, one per line, shortlex order.
    Words,
    /// Membership of a word family in the SAW language.
    Probe(ProbeArgs),
    /// Block-cutvertex tree of the ball (JSON).
    Blocks,
    /// Tutte 3-block trees of the nontrivial blocks of the ball (JSON).
    Tutte,
    /// Orbit quotient of the decomposition trees (JSON).
    Quotient,
    /// The SAW grammar in text format.
    Grammar,
    /// Words and maximal multiplicity per length of the grammar (TSV).
    Census,
    /// Generating function coefficients from the grammar (TSV n, c_n).
    Series,
    /// Minimal polynomial of the generating function.
    Minpoly,
    /// Radius of convergence and connective constant as decimal intervals.
    Mu,
    /// Full pipeline; compares grammar counts with the oracle for n ≤ N.
    Verify,
}

#[derive(Debug, Clone, Args)]
pub struct ProbeArgs {
    /// Word template such as `a c a^k c A^l`.
    #[arg(long)]
    pub template: String,
    /// Range of k, as `lo..hi` (inclusive) or a single value.
    #[arg(long, default_value = "0")]
    pub k: String,
    #[arg(long, default_value = "0")]
    pub l: String,
    #[arg(long, default_value = "0")]
    pub m: String,
}

/// Runs the command line and returns the exit code. Output goes to `out`
/// unless `--out` is given; diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match write_output(&cli.opts, &text, out) {
            Ok(()) => 0,
            Err(e) => report(err, &e),
        },
        Err((text, e)) => {
            // verify prints its table even on mismatch
            if let Some(text) = text {
                if let Err(io) = write_output(&cli.opts, &text, out) {
                    return report(err, &io);
                }
            }
            report(err, &e)
        }
    }
}

fn report(err: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

fn write_output(opts: &GlobalOpts, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &opts.out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("cannot write output: {e}"))),
    }
}

type Outcome = Result<String, (Option<String>, CliError)>;

fn execute(cli: &Cli) -> Outcome {
    let ctx = Context::load(&cli.opts).map_err(|e| (None, e))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.opts.parallel.max(1))
        .build()
        .map_err(|e| (None, CliError::Invalid(format!("cannot start thread pool: {e}"))))?;
    pool.install(|| commands::dispatch(&ctx, &cli.command))
}
