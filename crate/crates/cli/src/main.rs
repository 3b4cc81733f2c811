//! `multbound`: multiplicities along trajectories, polytope tools, explicit
//! bounds and seeded verification suites.

mod bound;
mod error;
mod input;
mod mult;
mod polytope;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use multbound::polytope::Limits;

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "multbound", version, about = "Multiplicity estimates along trajectories of polynomial vector fields")]
struct Cli {
    /// Write human-readable tables to standard error.
    #[arg(long, global = true)]
    pretty: bool,
    /// Largest ambient dimension accepted by polytope operations.
    #[arg(long, global = true, value_name = "N", default_value_t = Limits::default().max_dim)]
    max_dim: usize,
    /// Largest bounding-box size (lattice points) accepted by enumeration.
    #[arg(long, global = true, value_name = "POINTS", default_value_t = Limits::default().max_box)]
    max_box: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order of vanishing of polynomials along a trajectory.
    Mult(mult::MultArgs),
    /// Evaluate an explicit multiplicity bound with its constant chain.
    Bound(bound::BoundArgs),
    /// Exact polytope computations.
    #[command(subcommand)]
    Polytope(polytope::PolytopeCommand),
    /// Run a seeded verification suite.
    Verify(verify::VerifyArgs),
    /// Print a builtin problem file.
    Example(ExampleArgs),
}

#[derive(Debug, clap::Args)]
struct ExampleArgs {
    /// ramanujan, parabola, power-a or linear-diagonal.
    name: String,
    /// Exponent a of the invariant curve y = x^a (power-a only).
    #[arg(long, default_value_t = 5)]
    a: usize,
}

/// Global output settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub pretty: bool,
    pub limits: Limits,
}

pub fn emit(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(cli: Cli) -> CliResult<()> {
    let ctx = Context {
        pretty: cli.pretty,
        limits: Limits {
            max_dim: cli.max_dim,
            max_box: cli.max_box,
        },
    };
    match cli.command {
        Command::Mult(args) => mult::run(&args, ctx),
        Command::Bound(args) => bound::run(&args, ctx),
        Command::Polytope(cmd) => polytope::run(&cmd, ctx),
        Command::Verify(args) => verify::run(&args, ctx),
        Command::Example(args) => {
            let file = multbound::problem::example(&args.name, args.a).map_err(CliError::usage_from)?;
            println!("{}", file.to_json_string());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { CliError::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
