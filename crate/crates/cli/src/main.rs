use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tropspan::commands::{
    cmd_enumerate, cmd_plot, cmd_solve, cmd_verify, exit, exit_code, parse_vector, Candidates,
    CommandOptions,
};
use tropspan::{parse_solution, Error, SolveOptions, DEFAULT_BUDGET};

/// Exact max-plus span minimisation and just-in-time scheduling.
///
/// Exit codes: 0 success, 1 I/O failure or rejected candidate,
/// 2 parse/validation error, 3 infeasible instance, 4 enumeration budget exceeded.
#[derive(Parser, Debug)]
#[command(name = "tropspan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a problem and write its solution document.
    Solve(Common),
    /// Check candidate vectors or a solution document against a problem.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Solution document written by `solve`.
        #[arg(long, conflicts_with_all = ["x", "y"])]
        solution: Option<PathBuf>,
        /// Candidate vector (start times for schedules), e.g. "1 2" or "[1, -inf]".
        #[arg(long, allow_hyphen_values = true)]
        x: Vec<String>,
        /// Finish times paired with each --x of a schedule; defaults to Ax.
        #[arg(long, allow_hyphen_values = true)]
        y: Vec<String>,
    },
    /// List the selection matrices and the generators they contribute.
    Enumerate(Common),
    /// Draw the partial, extended and complete solution sets of a 2-D problem as SVG.
    Plot {
        #[command(flatten)]
        common: Common,
        /// Lower corner of the square plot window.
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        min: f64,
        /// Upper corner of the square plot window.
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        max: f64,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Problem document, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Destination, or `-` for standard output.
    #[arg(long, default_value = "-")]
    output: String,
    /// Maximum number of selection matrices to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Enumerate every selection matrix instead of the pruned family.
    #[arg(long)]
    exhaustive: bool,
    /// Merge collinear generator columns in schedule solutions.
    #[arg(long)]
    compact: bool,
}

impl Common {
    fn options(&self) -> CommandOptions {
        CommandOptions {
            solve: SolveOptions {
                budget: self.budget,
                exhaustive: self.exhaustive,
            },
            compact: self.compact,
        }
    }
}

enum Failure {
    Io(String),
    Solver(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {path}: {e}")))
    }
}

fn write_sink(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("writing standard output: {e}")))
    } else {
        fs::write(path, text).map_err(|e| Failure::Io(format!("writing {path}: {e}")))
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Solve(common) => {
            let out = cmd_solve(&read_source(&common.input)?, &common.options())?;
            write_sink(&common.output, &out)?;
        }
        Command::Enumerate(common) => {
            let out = cmd_enumerate(&read_source(&common.input)?, &common.options())?;
            write_sink(&common.output, &out)?;
        }
        Command::Plot { common, min, max } => {
            let out = cmd_plot(&read_source(&common.input)?, &common.options(), (min, max))?;
            write_sink(&common.output, &out)?;
        }
        Command::Verify {
            common,
            solution,
            x,
            y,
        } => {
            let input = read_source(&common.input)?;
            let candidates = match solution {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?;
                    Candidates::Solution(Box::new(parse_solution(&text)?))
                }
                None => Candidates::Vectors {
                    xs: x.iter().map(|s| parse_vector(s)).collect::<Result<_, _>>()?,
                    ys: y.iter().map(|s| parse_vector(s)).collect::<Result<_, _>>()?,
                },
            };
            let report = cmd_verify(&input, &candidates, &common.options())?;
            write_sink(&common.output, &report.to_text())?;
            if !report.passed {
                return Ok(exit::FAILURE);
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            exit::FAILURE
        }
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e}");
            if let Error::EnumerationBudgetExceeded { partial, .. } = &e {
                eprintln!("{} selections enumerated before stopping", partial.len());
            }
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
