//! Command-line driver for the `normplane` sweeps.
//!
//! Every subcommand prints a JSON summary on stdout and, with `--out`, writes
//! a detailed CSV or JSON report. Outputs depend only on the arguments and the
//! seed.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;
pub mod svg;

pub use args::{Args, Command};
pub use error::CliError;
pub use report::Output;

/// Runs one invocation: computes, writes `--out` and `--svg`, and returns the
/// summary document for stdout.
pub fn execute(args: &Args) -> Result<String, CliError> {
    let out = commands::run(args)?;
    if let Some(path) = &args.out {
        report::write_file(path, &out.detail_bytes())?;
    }
    if let (Some(path), Some(fig)) = (&args.svg, &out.figure) {
        // numeric outputs are already on disk; a figure failure only warns
        if let Err(e) = report::write_file(path, fig.as_bytes()) {
            eprintln!("warning: {e}");
        }
    } else if args.svg.is_some() {
        eprintln!("warning: no figure for this subcommand");
    }
    Ok(out.summary_document())
}
