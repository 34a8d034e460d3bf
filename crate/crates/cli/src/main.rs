use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use fibercone_cli::commands::{run, Command, Overrides};
use fibercone_cli::report::Report;
use fibercone_cli::session::parse_session;
use fibercone_cli::suite::example_suite;
use fibercone_cli::{exit_code, CliError};
use fibercone_core::invariants::{StabilizationPolicy, SuperficialVariant};
use fibercone_core::Exec;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Plain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    /// x in the maximal ideal, compared against e_(1,d-1)
    Maximal,
    /// x in I, compared against e(I)
    Ideal,
}

/// Fiber-cone invariants of m-primary ideals.
///
/// Usage: fibercone <session-file> <command> [args], or
/// fibercone examples [--only <id>].
///
/// Commands: report [I J], cm [I J], gorenstein [I J], series [I],
/// mixed <I> <i> <j>, vv [I J], superficial <I> <x> [a ...].
#[derive(Parser, Debug)]
#[command(name = "fibercone", version)]
struct Cli {
    /// Session file followed by a command and its arguments
    #[arg(required = true, num_args = 1..)]
    args: Vec<String>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Run a single built-in example (sgp6 sgp7 sgp4 plane space family)
    #[arg(long)]
    only: Option<String>,
    /// Stabilization budget
    #[arg(long)]
    nmax: Option<usize>,
    /// Stabilization window
    #[arg(long)]
    window: Option<usize>,
    /// Initial truncation for local rings
    #[arg(long)]
    trunc: Option<usize>,
    /// Variant for `superficial`
    #[arg(long, value_enum, default_value = "maximal")]
    variant: Variant,
    /// Evaluate grids on one thread
    #[arg(long)]
    sequential: bool,
    #[arg(long, hide = true)]
    inject_off_by_one: bool,
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    if cli.args[0] == "examples" {
        if cli.args.len() > 1 {
            return Err(CliError::Usage("examples takes no arguments".into()));
        }
        let policy = StabilizationPolicy::new(cli.window.unwrap_or(3), cli.nmax.unwrap_or(40))?;
        return example_suite(cli.only.as_deref(), cli.inject_off_by_one, exec, policy);
    }
    let path = &cli.args[0];
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let session = parse_session(&text)?;
    let variant = match cli.variant {
        Variant::Maximal => SuperficialVariant::MaximalIdeal,
        Variant::Ideal => SuperficialVariant::Ideal,
    };
    let cmd = Command::parse(&cli.args[1..], variant)?;
    let ov = Overrides {
        n_max: cli.nmax,
        window: cli.window,
        trunc: cli.trunc,
        exec,
    };
    run(&session, &cmd, &ov)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Plain = cli.format;
    let result = dispatch(&cli);
    let code = exit_code(&result);
    match &result {
        Ok(r) => print!("{}", r.render()),
        Err(e) => print!("{}", e.to_report().render()),
    }
    ExitCode::from(code as u8)
}
