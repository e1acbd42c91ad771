//! Batch front end: reads a problem file, builds the framework it
//! describes, and prints argument listings, attack relations,
//! extensions, entailment answers, maximal-consistent-subset reports, or
//! the cross-engine equivalence check.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation error,
//! 3 equivalence-check failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use seqarg::entailment::EntailmentMode;
use seqarg::formula::Formula;
use seqarg::limits;
use seqarg::semantics::Semantics;

mod engine;
mod problem;

use engine::{build_engine, Caps, CommandOutput, Engine};
use problem::ProblemFile;

#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Validation(String),
    CheckFailed,
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Validation(_) => 2,
            AppError::CheckFailed => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "seqarg",
    about = "Sequent-based argumentation with defeasible assumptions",
    version
)]
struct Cli {
    /// Cap on distinct atoms per truth-table computation.
    #[arg(long, global = true, default_value_t = limits::DEFAULT_MAX_ATOMS)]
    max_atoms: usize,

    /// Cap on strict premises plus assumptions.
    #[arg(long, global = true, default_value_t = limits::DEFAULT_MAX_PREMISES)]
    max_premises: usize,

    /// Cap on arguments for extension enumeration.
    #[arg(long, global = true, default_value_t = limits::DEFAULT_MAX_ARGUMENTS)]
    max_arguments: usize,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the argument universe.
    Args { file: PathBuf },
    /// List the attack relation with rule and witness annotations.
    Attacks { file: PathBuf },
    /// List the extensions under a semantics.
    Extensions {
        file: PathBuf,
        /// grd, cmp, prf or stb (default: the file's `semantics:`, else grd).
        #[arg(long)]
        semantics: Option<String>,
    },
    /// Answer entailment queries.
    Entails {
        file: PathBuf,
        /// grd, cmp, prf or stb (default: the file's `semantics:`, else grd).
        #[arg(long)]
        semantics: Option<String>,
        /// cap, cup or wcap (default: the file's `entailment:`, else cap).
        #[arg(long)]
        mode: Option<String>,
        /// Answer this query instead of the file's `query:` lines.
        #[arg(long)]
        query: Option<String>,
    },
    /// List maximal consistent subsets, minimal conflicts and free formulas.
    Mcs { file: PathBuf },
    /// Cross-check the argumentation, translation and MCS engines.
    Check { file: PathBuf },
}

fn load_problem(path: &PathBuf) -> Result<ProblemFile, AppError> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| AppError::Usage(format!("cannot read {}: {e}", path.display())))?;
    problem::parse_problem(&source)
}

fn resolve_semantics(flag: &Option<String>, problem: &ProblemFile) -> Result<Semantics, AppError> {
    match flag {
        Some(text) => Semantics::from_str(text).map_err(AppError::Usage),
        None => Ok(problem.semantics.unwrap_or(Semantics::Grounded)),
    }
}

fn resolve_mode(flag: &Option<String>, problem: &ProblemFile) -> Result<EntailmentMode, AppError> {
    match flag {
        Some(text) => EntailmentMode::from_str(text).map_err(AppError::Usage),
        None => Ok(problem.entailment.unwrap_or(EntailmentMode::Cap)),
    }
}

fn run(cli: &Cli) -> Result<CommandOutput, AppError> {
    let caps = Caps {
        max_atoms: cli.max_atoms,
        max_premises: cli.max_premises,
        max_arguments: cli.max_arguments,
    };
    let build = |path: &PathBuf, extra: Option<&Formula>| -> Result<Engine, AppError> {
        build_engine(load_problem(path)?, caps, extra)
    };
    match &cli.command {
        Command::Args { file } => Ok(engine::cmd_args(&build(file, None)?)),
        Command::Attacks { file } => Ok(engine::cmd_attacks(&build(file, None)?)),
        Command::Extensions { file, semantics } => {
            let problem = load_problem(file)?;
            let semantics = resolve_semantics(semantics, &problem)?;
            engine::cmd_extensions(&build_engine(problem, caps, None)?, semantics)
        }
        Command::Entails {
            file,
            semantics,
            mode,
            query,
        } => {
            let problem = load_problem(file)?;
            let semantics = resolve_semantics(semantics, &problem)?;
            let mode = resolve_mode(mode, &problem)?;
            let extra = query
                .as_deref()
                .map(|text| {
                    seqarg::parser::parse(text)
                        .map_err(|e| AppError::Usage(format!("in --query: {e}")))
                })
                .transpose()?;
            let queries: Vec<Formula> = match &extra {
                Some(q) => vec![q.clone()],
                None => problem.queries.clone(),
            };
            if queries.is_empty() {
                return Err(AppError::Usage(
                    "no queries: add `query:` lines or pass --query".into(),
                ));
            }
            // Queries are injected into the conclusion pool up front, so
            // answering never hits a pool miss.
            let engine = build_engine(problem, caps, extra.as_ref())?;
            engine::cmd_entails(&engine, semantics, mode, &queries)
        }
        Command::Mcs { file } => engine::cmd_mcs(&build(file, None)?),
        Command::Check { file } => {
            let problem = load_problem(file)?;
            let queries = problem.queries.clone();
            let engine = build_engine(problem, caps, None)?;
            engine::cmd_check(&engine, &queries)
        }
    }
}

/// Write to stdout, treating a closed pipe as a normal exit rather than
/// a panic.
fn emit(text: &str) -> Result<(), ExitCode> {
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Err(ExitCode::SUCCESS),
        Err(e) => {
            eprintln!("error: cannot write to stdout: {e}");
            Err(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else
            // is a usage error.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            return match emit(&err.to_string()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            };
        }
    };
    match run(&cli) {
        Ok(output) => {
            let rendered = if cli.json {
                let mut text =
                    serde_json::to_string_pretty(&output.json).expect("serializable");
                text.push('\n');
                text
            } else {
                output.text.clone()
            };
            if let Err(code) = emit(&rendered) {
                return code;
            }
            if output.check_failed {
                return ExitCode::from(AppError::CheckFailed.exit_code());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            match &err {
                AppError::Usage(message) => eprintln!("error: {message}"),
                AppError::Validation(message) => eprintln!("error: {message}"),
                AppError::CheckFailed => eprintln!("error: check failed"),
            }
            ExitCode::from(err.exit_code())
        }
    }
}
