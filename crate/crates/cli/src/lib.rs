//! Command-line driver for the `hypercover` constructions.
//!
//! [`run`] parses a command line, executes one subcommand inside a rayon pool
//! of the requested size, prints a [`summary::RunSummary`] and returns the
//! process exit code: 0 when every verdict passes, 2 when a verdict fails,
//! 1 for usage errors, malformed inputs and limit or precondition violations.

pub mod args;
pub mod commands;
pub mod formats;
pub mod summary;

use std::io::Write;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command};
use commands::Report;
use formats::FormatError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    File(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] hypercover::Error),
    /// The input parses but fails validation against the host.
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            _ => EXIT_ERROR,
        }
    }
}

/// The command line as echoed in summaries: the arguments after the program
/// name, minus `--threads`, which cannot change any result.
pub fn command_echo(args: &[String]) -> String {
    let mut kept = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--threads" {
            skip = true;
        } else if !a.starts_with("--threads=") {
            kept.push(a.as_str());
        }
    }
    kept.join(" ")
}

fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Ep(a) => commands::ep(a),
        Command::Lift(a) => commands::lift(a),
        Command::Dense(a) => commands::dense(a),
        Command::Oracle(a) => commands::oracle(a),
        Command::Random(a) => commands::random(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bound(a) => commands::bound(a),
    }
}

fn output_path(command: &Command) -> Option<&std::path::Path> {
    match command {
        Command::Ep(a) => a.output.as_deref(),
        Command::Lift(a) => a.output.as_deref(),
        Command::Dense(a) => a.output.as_deref(),
        Command::Oracle(a) => a.output.as_deref(),
        Command::Random(a) => a.output.as_deref(),
        Command::Bound(a) => a.output.as_deref(),
        Command::Verify(_) => None,
    }
}

fn run_parsed(cli: &Cli, echo: String) -> Result<(String, i32), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.command.common().threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    let report = pool.install(|| execute(&cli.command))?;
    if let (Some(path), Some(contents)) = (output_path(&cli.command), &report.output) {
        formats::write_file(path, contents)?;
    }
    let mut summary = summary::RunSummary::new();
    summary.push("command", echo);
    for (k, v) in report.summary.entries() {
        summary.push(k.clone(), v.clone());
    }
    let code = if report.ok { EXIT_OK } else { EXIT_INVALID };
    Ok((summary.render(cli.command.common().json), code))
}

/// Runs one command line (`args` excludes the program name) and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("hypercover".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run_parsed(&cli, command_echo(args)) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// [`run`] with captured output: `(exit code, stdout, stderr)`.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&args, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
