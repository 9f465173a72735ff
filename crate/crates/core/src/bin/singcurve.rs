use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use singcurve::cli::{run, Options, EXIT_INVALID};
use singcurve::gb::DEFAULT_MAX_STEPS;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Linsys,
    Parsch,
    Solve,
    Cover,
    Verify,
}

/// Linear systems of singular plane curves, parametrizing schemes and
/// quartic double planes.
#[derive(Parser, Debug)]
#[command(name = "singcurve", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON problem file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Minimal polynomial of `r`, overriding the file's `field`.
    #[arg(long)]
    field: Option<String>,
    /// Extra equations for `solve`, comma separated.
    #[arg(long, value_delimiter = ',')]
    slice: Vec<String>,
    /// Double-line coordinate for `cover`.
    #[arg(long)]
    line: Option<String>,
    /// Case for `verify`, or `all`.
    #[arg(long)]
    case: Option<String>,
    /// Print blow-up charts and condition matrices to stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INVALID as u8
            } else {
                0
            });
        }
    };
    let input = match &cli.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID as u8);
            }
        },
        None => None,
    };
    let opts = Options {
        field: cli.field,
        slice: cli.slice,
        line: cli.line,
        case: cli.case,
        trace: cli.trace,
        max_steps: cli.max_steps,
    };
    let command = format!("{:?}", cli.command).to_lowercase();
    let out = run(&command, input.as_deref(), &opts);
    eprint!("{}", out.trace);
    if out.code == 0 || out.code == 3 {
        print!("{}", out.output);
    } else {
        eprint!("{}", out.output);
    }
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
