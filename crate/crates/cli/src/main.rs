use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_cli::input::{self, InputError};
use cubic_cli::report::{build_report, InputEcho, Method, Settings, SolveReport};
use cubic_cli::{batch, text, Exit};
use cubic_core::SolveOptions;

#[derive(Parser)]
#[command(name = "cubic", version, about = "Closed-form cubic equation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a single polynomial
    Solve(SolveArgs),
    /// Solve every line of a JSON-lines file
    Batch(BatchArgs),
    /// Run fe, classic and oracle on one polynomial and check they agree
    Compare(CompareArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial expression, e.g. "x^3 - 6x^2 + 11x - 6"
    #[arg(
        allow_hyphen_values = true,
        required_unless_present = "coeffs",
        conflicts_with = "coeffs"
    )]
    expr: Option<String>,
    /// Coefficients in descending powers, e.g. 1,-6,11,-6
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Args)]
struct SolverArgs {
    /// Skip the Newton refinement of the closed-form roots
    #[arg(long)]
    no_polish: bool,
    /// Relative threshold for treating the discriminant as zero
    #[arg(long, default_value_t = 1e-12, value_parser = non_negative)]
    tol_d: f64,
    /// Accept degree-2 input
    #[arg(long)]
    allow_quadratic: bool,
    /// Report elapsed time as null
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value = "fe")]
    method: Method,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BatchArgs {
    /// JSON-lines input file
    #[arg(long)]
    input: PathBuf,
    /// Output file (standard output if omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value = "fe")]
    method: Method,
    /// Worker threads; output order is the input order for any value
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    poly: PolyArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest relative root distance between methods that counts as agreement
    #[arg(long, default_value_t = 1e-8, value_parser = non_negative)]
    agree_tol: f64,
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("'{s}' is not a finite non-negative number")),
    }
}

impl SolverArgs {
    fn settings(&self, method: Method) -> Settings {
        Settings {
            method,
            options: SolveOptions {
                polish: !self.no_polish,
                tol_d: self.tol_d,
                ..SolveOptions::default()
            },
            timing: !self.no_timing,
        }
    }
}

/// Prints an input error with a caret line and picks the exit status.
fn report_input_error(source: &str, err: &InputError) -> Exit {
    eprintln!("error: {err}");
    if let Some(pos) = err.position() {
        eprintln!("{}", input::caret(source, pos));
    }
    if err.is_degree_gate() {
        if matches!(err, InputError::NotCubic(2)) {
            eprintln!("hint: pass --allow-quadratic to solve degree-2 input");
        }
        Exit::DegreeGate
    } else {
        Exit::InputError
    }
}

fn prepare(poly: &PolyArgs, solver: &SolverArgs, method: Method) -> Result<SolveReport, Exit> {
    let (text, parsed, source) = match (&poly.expr, &poly.coeffs) {
        (Some(e), _) => (e.as_str(), input::parse_expression(e), Some(e.clone())),
        (None, Some(c)) => (c.as_str(), input::parse_coefficient_list(c), None),
        (None, None) => unreachable!("clap requires one input form"),
    };
    let parsed = parsed.map_err(|e| report_input_error(text, &e))?;
    let p =
        input::gate(&parsed, solver.allow_quadratic).map_err(|e| report_input_error(text, &e))?;
    Ok(build_report(
        InputEcho::new(source, &parsed),
        &p,
        &solver.settings(method),
    ))
}

fn print_report(report: &SolveReport, format: Format) {
    match format {
        Format::Text => print!("{}", text::render(report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable")
        ),
    }
}

fn cmd_solve(args: &SolveArgs) -> Exit {
    match prepare(&args.poly, &args.solver, args.method) {
        Ok(report) => {
            print_report(&report, args.format);
            Exit::Ok
        }
        Err(code) => code,
    }
}

fn cmd_compare(args: &CompareArgs) -> Exit {
    match prepare(&args.poly, &args.solver, Method::All) {
        Ok(mut report) => {
            let agree = report.check_agreement(args.agree_tol);
            print_report(&report, args.format);
            if agree {
                Exit::Ok
            } else {
                Exit::Disagreement
            }
        }
        Err(code) => code,
    }
}

fn cmd_batch(args: &BatchArgs) -> anyhow::Result<()> {
    let bytes =
        fs::read(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let content = String::from_utf8(bytes)
        .with_context(|| format!("{} is not valid UTF-8", args.input.display()))?;
    let settings = args.solver.settings(args.method);
    let (outputs, summary) = batch::run(
        &content,
        &settings,
        args.solver.allow_quadratic,
        args.jobs.into(),
    );
    let rendered = batch::render(&outputs, &summary);
    match &args.output {
        Some(path) => {
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Exit::InputError as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let code = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Batch(args) => match cmd_batch(args) {
            Ok(()) => Exit::Ok,
            Err(e) => {
                eprintln!("error: {e:#}");
                Exit::InputError
            }
        },
    };
    ExitCode::from(code as u8)
}
