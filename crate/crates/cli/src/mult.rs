use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use multbound::algebra::LaurentPolynomial;
use multbound::bounds::{mixed_single_bound, nmorse_bound, toric_bound, FieldData};
use multbound::mult::{multiplicity, MultOptions, MultiplicityResult};
use multbound::problem::Problem;

use crate::input::ProblemArgs;
use crate::{emit, CliError, CliResult, Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MultTheorem {
    /// 2^(n+1) (d + (n-1) delta)^n at a regular point.
    Nmorse,
    /// Toric bound with K = Delta(P) + Delta_{n,xi}; needs a time coordinate and chi.
    Toric,
    /// Single mixed-degree bound in (d_z, d_x); needs a time coordinate and chi.
    Mixed,
}

impl MultTheorem {
    fn name(self) -> &'static str {
        match self {
            MultTheorem::Nmorse => "nmorse",
            MultTheorem::Toric => "toric",
            MultTheorem::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Args)]
pub struct MultArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// The polynomial P; repeat for several. Defaults to the problem's list.
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub poly: Vec<String>,
    /// Initial truncation order N.
    #[arg(long, value_name = "N")]
    pub order: Option<usize>,
    /// Escalation cap (default 4096, or MULTBOUND_MAX_ORDER).
    #[arg(long, visible_alias = "max-order", value_name = "CAP")]
    pub cap: Option<usize>,
    /// Bound to evaluate next to the multiplicity; repeatable. Defaults to the problem's list.
    #[arg(long, value_enum)]
    pub theorem: Vec<MultTheorem>,
    /// The D-property constant chi (toric and mixed).
    #[arg(long)]
    pub chi: Option<u64>,
}

#[derive(Serialize)]
struct BoundLine {
    theorem: &'static str,
    value: String,
    holds: bool,
}

#[derive(Serialize)]
struct MultLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<String>,
    #[serde(flatten)]
    result: MultiplicityResult,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    bounds: Vec<BoundLine>,
}

fn theorems(args: &MultArgs, problem: &Problem) -> CliResult<Vec<MultTheorem>> {
    if !args.theorem.is_empty() {
        return Ok(args.theorem.clone());
    }
    problem
        .file
        .bounds
        .iter()
        .map(|t| {
            MultTheorem::from_str(t, false)
                .map_err(|_| CliError::usage(format!("unknown bound `{t}` in problem file")))
        })
        .collect()
}

fn field_data(problem: &Problem) -> CliResult<FieldData> {
    let field = problem
        .field
        .as_ref()
        .ok_or_else(|| CliError::usage("this bound needs a vector field"))?;
    Ok(FieldData::from_field(field)?)
}

fn evaluate(
    theorem: MultTheorem,
    p: &LaurentPolynomial,
    problem: &Problem,
    chi: Option<u64>,
) -> CliResult<BigInt> {
    let need_chi = || chi.ok_or_else(|| CliError::usage(format!("missing parameters for {}: chi", theorem.name())));
    match theorem {
        MultTheorem::Nmorse => {
            let field = problem
                .field
                .as_ref()
                .ok_or_else(|| CliError::usage("nmorse needs a vector field"))?;
            let delta = field
                .degree()
                .ok_or_else(|| CliError::usage("nmorse needs a polynomial field"))?;
            Ok(nmorse_bound(problem.dim() as u64, delta, p.total_degree()?)?)
        }
        MultTheorem::Toric => {
            let chi = need_chi()?;
            let fd = field_data(problem)?;
            let newton = p.newton_polytope()?;
            Ok(toric_bound(problem.dim() as u64, fd.delta, &newton, &fd.xi, chi)?.value)
        }
        MultTheorem::Mixed => {
            let chi = need_chi()?;
            let fd = field_data(problem)?;
            let (d_z, d_x) = p.mixed_degrees(fd.time_index)?;
            Ok(mixed_single_bound(problem.dim() as u64 - 1, &fd, d_z, d_x, chi)?.value)
        }
    }
}

pub fn run(args: &MultArgs, ctx: Context) -> CliResult<()> {
    let problem = args.problem.load()?;
    let exprs: Vec<String> = if args.poly.is_empty() {
        problem.file.polynomials.clone()
    } else {
        args.poly.clone()
    };
    if exprs.is_empty() {
        return Err(CliError::usage("no polynomial: give --poly"));
    }
    let theorems = theorems(args, &problem)?;
    let chi = args.chi.or(problem.file.chi);
    let mut base = MultOptions::from_env().map_err(CliError::usage_from)?;
    if let Some(cap) = args.cap {
        base.cap = cap;
        base.start = base.start.min(cap.max(1));
    }
    if let Some(order) = args.order {
        base.start = order;
    }
    let labelled = exprs.len() > 1;
    let mut violations = Vec::new();
    for expr in &exprs {
        let p = problem.parse(expr).map_err(CliError::usage_from)?;
        let mut bounds = Vec::new();
        for &t in &theorems {
            bounds.push((t, evaluate(t, &p, &problem, chi)?));
        }
        let opts = MultOptions {
            bound: bounds.iter().map(|(_, b)| b.clone()).min(),
            ..base.clone()
        };
        let result = multiplicity(&p, problem.source(), &opts)?;
        let lines: Vec<BoundLine> = bounds
            .into_iter()
            .map(|(t, b)| BoundLine {
                theorem: t.name(),
                holds: BigInt::from(result.lower_bound()) <= b,
                value: b.to_string(),
            })
            .collect();
        if lines.iter().any(|l| !l.holds) {
            violations.push(expr.clone());
        }
        if ctx.pretty {
            eprintln!("{expr:<24} {result:?}");
            for l in &lines {
                let mark = if l.holds { "<=" } else { "EXCEEDS" };
                eprintln!("{:<24} {mark} {} {}", "", l.theorem, l.value);
            }
        }
        emit(&MultLine {
            poly: labelled.then(|| expr.clone()),
            result,
            bounds: lines,
        });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!(
            "bound-violation candidate for {}",
            violations.join(", ")
        )))
    }
}
