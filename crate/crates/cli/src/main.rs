use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use sit_core::diagnostic::{exit_status, Class};
use sit_core::eval::DEFAULT_FUEL;
use sit_core::translate::{emit_general, synth_ctor_type, to_general};
use sit_core::{eval_str, load, CheckOptions, Diagnostic, ErrorCode, EvalOptions, Loaded};

/// Type checker and evaluator for programs with simpler indexed types.
#[derive(Parser, Debug)]
#[command(name = "sit", version)]
struct Cli {
    /// Maximum number of reduction steps.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Log every pattern match and its outcome to standard error.
    #[arg(long, global = true)]
    trace_match: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type-check a file.
    Check {
        file: PathBuf,
        /// Skip the exhaustiveness check of function clauses.
        #[arg(long)]
        no_coverage: bool,
        /// Also check pattern-row fields under the data telescope.
        #[arg(long)]
        strict_fig6: bool,
    },
    /// Check a file and print the normal form of an expression.
    Eval {
        file: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Print every data type with explicit constructor types.
    Translate {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        out: Option<PathBuf>,
    },
    /// Print the type of a constructor.
    CtorType { file: PathBuf, ctor: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => code(Class::Usage.exit_code()),
            };
        }
    };
    code(run(cli))
}

fn code(status: i32) -> ExitCode {
    ExitCode::from(status as u8)
}

fn usage(msg: String) -> i32 {
    eprintln!("sit: {msg}");
    Class::Usage.exit_code()
}

fn run(cli: Cli) -> i32 {
    let eval = EvalOptions {
        fuel: cli.fuel,
        trace_match: cli.trace_match,
    };
    let (file, opts) = match &cli.command {
        Command::Check {
            file,
            no_coverage,
            strict_fig6,
        } => (
            file,
            CheckOptions {
                coverage: !no_coverage,
                strict_fig6: *strict_fig6,
                eval: eval.clone(),
            },
        ),
        Command::Eval { file, .. }
        | Command::Translate { file, .. }
        | Command::CtorType { file, .. } => (
            file,
            CheckOptions {
                eval: eval.clone(),
                ..CheckOptions::default()
            },
        ),
    };
    let name = file.display().to_string();
    let text = match std::fs::read_to_string(file) {
        Ok(text) => text,
        Err(e) => return usage(format!("cannot read {name}: {e}")),
    };
    let loaded = match load(&name, &text, &opts) {
        Ok(loaded) => loaded,
        Err(d) => return report(&name, &[d]),
    };
    let warnings = &loaded.program.warnings;
    let status = report(&name, warnings);
    let outcome = match cli.command {
        Command::Check { .. } => Ok(()),
        Command::Eval { expr, .. } => eval_str(&loaded, &expr, &eval).map(|v| println!("{v}")),
        Command::Translate { out, .. } => match (translate(&loaded), out) {
            (Err(d), _) => Err(d),
            (Ok(text), None) => {
                print!("{text}");
                Ok(())
            }
            (Ok(text), Some(path)) => match std::fs::write(&path, text) {
                Ok(()) => Ok(()),
                Err(e) => return usage(format!("cannot write {}: {e}", path.display())),
            },
        },
        Command::CtorType { ctor, .. } => synth_ctor_type(&loaded.program.signature, &ctor)
            .map(|ty| println!("{ctor} : {ty}"))
            .map_err(|_| {
                Diagnostic::new(
                    ErrorCode::UnknownName,
                    format!("`{ctor}` is not a constructor"),
                    None,
                )
            }),
    };
    match outcome {
        Ok(()) => status,
        Err(d) => report(&name, &[d]).max(status),
    }
}

fn translate(loaded: &Loaded) -> Result<String, Diagnostic> {
    let mut text = String::new();
    for data in loaded.program.signature.data_types() {
        let general = to_general(data).map_err(|e| {
            Diagnostic::new(ErrorCode::Internal, format!("internal error: {e}"), None)
        })?;
        if !text.is_empty() {
            text.push('\n');
        }
        text.push_str(&emit_general(&general));
    }
    Ok(text)
}

/// Prints diagnostics to standard error and returns their exit status.
fn report(file: &str, diags: &[Diagnostic]) -> i32 {
    for d in diags {
        eprintln!("{}", d.render(file));
    }
    exit_status(diags)
}
