use std::io::Write;

use clap::Args;

use multbound::exec::Execution;
use multbound::verify::{run_property_suite, InstanceSpec, Suite};

use crate::{CliError, CliResult, Context};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// bk, vol-ivol, rolle-order, rolle-singular, bound-soundness,
    /// mixed-volume, delta-additivity or hilbert.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of trials (default: the suite's own).
    #[arg(long)]
    pub trials: Option<usize>,
    /// Largest ambient dimension n drawn.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Largest field degree delta drawn.
    #[arg(long)]
    pub max_delta: Option<u64>,
    /// Largest polynomial degree d drawn.
    #[arg(long)]
    pub max_degree: Option<u64>,
    /// Run trials on one thread.
    #[arg(long)]
    pub sequential: bool,
}

pub fn run(args: &VerifyArgs, ctx: Context) -> CliResult<()> {
    let suite: Suite = args.suite.parse()?;
    let mut spec = InstanceSpec::for_suite(suite, args.seed);
    if let Some(t) = args.trials {
        spec.trials = t;
    }
    if let Some(v) = args.max_n {
        spec.max_n = v;
    }
    if let Some(v) = args.max_delta {
        spec.max_delta = v;
    }
    if let Some(v) = args.max_degree {
        spec.max_degree = v;
    }
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let summary = run_property_suite(suite, &spec, exec)?;
    let mut out = std::io::stdout().lock();
    out.write_all(summary.to_jsonl().as_bytes())
        .map_err(|e| CliError::usage(format!("cannot write output: {e}")))?;
    if ctx.pretty {
        eprintln!(
            "{:<18} {:>6} passed {:>6} failed {:>6} degenerate  (degenerate draws {:.1}%)",
            suite.name(),
            summary.passed,
            summary.failed,
            summary.degenerate,
            100.0 * summary.degenerate_rate()
        );
    }
    if summary.ok() {
        Ok(())
    } else {
        Err(CliError::Violation(format!(
            "{} of {} trials failed",
            summary.failed, spec.trials
        )))
    }
}
