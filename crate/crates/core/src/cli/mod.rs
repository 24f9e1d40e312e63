//! Command-line front end: model files, commands and emitters.

mod commands;
mod lexer;
mod model;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{execute, Command, Format, Options, Output, Report};
pub use model::{resolve_coordinate, ModelFile, NamedField, NamedForm, OpaqueDecl, Warning};

use crate::error::Error;
use crate::probe::ProbeConfig;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for unreadable input, syntax errors and bad arguments.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for failed mathematical preconditions.
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "varseq",
    version,
    about = "Variational calculus on jet bundles"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Model file (`-` reads standard input).
    pub model: PathBuf,
    /// Form to operate on; repeat for two-form commands. Defaults to the
    /// last declared form(s).
    #[arg(long)]
    pub form: Vec<String>,
    /// Vector field. Defaults to the last declared field.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "probe-trials", default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub probe_trials: u64,
    /// Lift the selected forms to this jet order first.
    #[arg(long)]
    pub order: Option<usize>,
}

/// Runs the tool with the given arguments (program name first) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    let shown = args.model.display().to_string();
    let src = if shown == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&args.model)
    };
    let src = match src {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {shown}: {e}");
            return EXIT_INPUT;
        }
    };
    let model = match ModelFile::parse(&src) {
        Ok(m) => m,
        Err(e) => {
            let _ = writeln!(err, "error: {shown}:{e}");
            return EXIT_INPUT;
        }
    };
    for w in &model.warnings {
        let _ = writeln!(err, "{shown}:{w}");
    }
    let opts = Options {
        forms: args.form,
        field: args.field,
        order: args.order,
        probe: ProbeConfig {
            seed: args.seed,
            trials: args.probe_trials as usize,
            ..ProbeConfig::default()
        },
    };
    match execute(args.command, &model, &opts) {
        Ok(report) => {
            let _ = write!(out, "{}", report.render(args.format));
            EXIT_OK
        }
        Err(e @ Error::Usage(_)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MATH
        }
    }
}
