use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::json;

use multbound::bounds::{
    caseab_bound, mixed_multi_bound, mixed_single_bound, nmorse_bound, pure_bound, toric_bound,
    BoundReport, Case, CaseAbInput, FieldData,
};

use crate::input::{read_polytope, ProblemArgs};
use crate::{emit, CliError, CliResult, Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundTheorem {
    /// 2^(n+1) (d + (n-1) delta)^n; needs n, delta, d.
    Nmorse,
    /// Pure-degree bound; needs n, delta, d, chi.
    Pure,
    /// Toric bound; needs Delta (--delta-file or --poly), Delta_xi, delta, chi.
    Toric,
    /// Single mixed-degree bound; needs dz, dx, chi.
    Mixed,
    /// Multi-level mixed bound; needs dz, dx, q, chi.
    MixedMulti,
    /// Case A; needs m, D, dz, dx, q, chi.
    #[value(name = "caseA")]
    CaseA,
    /// Case B; needs m, D, dz, dx, q, chi.
    #[value(name = "caseB")]
    CaseB,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub theorem: BoundTheorem,
    /// n: number of non-time variables (ambient dimension for nmorse and pure).
    #[arg(short = 'n')]
    pub n: Option<u64>,
    /// delta: degree of the vector field.
    #[arg(long)]
    pub delta: Option<u64>,
    /// d: degree of P (for caseA/caseB: the truncation degree of Delta_d).
    #[arg(short = 'd')]
    pub d: Option<u64>,
    /// chi: the D-property constant.
    #[arg(long)]
    pub chi: Option<u64>,
    /// d_z: degree of P in the time variable z.
    #[arg(long)]
    pub dz: Option<u64>,
    /// d_x: degree of P in the remaining variables x.
    #[arg(long)]
    pub dx: Option<u64>,
    /// q: number of polynomials cutting out the cycle.
    #[arg(short = 'q')]
    pub q: Option<u64>,
    /// m: dimension of the cycle (1..=n+1).
    #[arg(short = 'm')]
    pub m: Option<u64>,
    /// D: degree of the generators.
    #[arg(short = 'D')]
    pub generator_degree: Option<u64>,
    /// Delta: Newton polytope of P, as polytope JSON.
    #[arg(long, value_name = "FILE")]
    pub delta_file: Option<PathBuf>,
    /// Delta_xi: the field polytope (containing the origin), as polytope JSON.
    #[arg(long, value_name = "FILE")]
    pub field_file: Option<PathBuf>,
    /// P: a polynomial over the problem's variables; its Newton polytope is Delta.
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[command(flatten)]
    pub problem: ProblemArgs,
}

struct Missing<'a> {
    theorem: &'a str,
    names: Vec<&'static str>,
}

impl<'a> Missing<'a> {
    fn new(theorem: &'a str) -> Self {
        Missing {
            theorem,
            names: Vec::new(),
        }
    }

    fn take<T: Copy + Default>(&mut self, name: &'static str, v: Option<T>) -> T {
        if v.is_none() {
            self.names.push(name);
        }
        v.unwrap_or_default()
    }

    fn check(self) -> CliResult<()> {
        if self.names.is_empty() {
            Ok(())
        } else {
            Err(CliError::usage(format!(
                "missing parameters for {}: {}",
                self.theorem,
                self.names.join(", ")
            )))
        }
    }
}

fn theorem_name(t: BoundTheorem) -> String {
    t.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// Field data from a problem, from `--field-file`, or the trivial field.
fn field_data(args: &BoundArgs, ctx: &Context) -> CliResult<(FieldData, u64)> {
    let fd = if args.problem.is_given() {
        let problem = args.problem.load()?;
        let field = problem
            .field
            .as_ref()
            .ok_or_else(|| CliError::usage("the problem has no vector field"))?;
        FieldData::from_field(field)?
    } else if let Some(path) = &args.field_file {
        let xi = read_polytope(path, &ctx.limits)?;
        let delta = args
            .delta
            .ok_or_else(|| CliError::usage("--field-file needs --delta"))?;
        FieldData::new(delta, xi, args.problem.time_index.unwrap_or(0))?
    } else {
        let n = args.n.unwrap_or(1) as usize;
        FieldData::trivial(n, args.delta.unwrap_or(1), 0)?
    };
    let n = fd.ambient() as u64 - 1;
    if let Some(given) = args.n.filter(|&g| g != n) {
        return Err(CliError::usage(format!(
            "-n {given} disagrees with the field, which has n = {n}"
        )));
    }
    Ok((fd, n))
}

fn toric(args: &BoundArgs, ctx: &Context, chi: u64) -> CliResult<BoundReport> {
    let (newton, xi, delta) = if args.problem.is_given() {
        let problem = args.problem.load()?;
        let field = problem
            .field
            .as_ref()
            .ok_or_else(|| CliError::usage("the problem has no vector field"))?;
        let fd = FieldData::from_field(field)?;
        let newton = match (&args.delta_file, &args.poly) {
            (Some(path), _) => read_polytope(path, &ctx.limits)?,
            (None, Some(expr)) => problem.parse(expr).map_err(CliError::usage_from)?.newton_polytope()?,
            (None, None) => return Err(CliError::usage("missing parameters for toric: Delta (--delta-file or --poly)")),
        };
        (newton, fd.xi, args.delta.unwrap_or(fd.delta))
    } else {
        let mut missing = Missing::new("toric");
        if args.delta_file.is_none() {
            missing.names.push("Delta (--delta-file)");
        }
        if args.field_file.is_none() {
            missing.names.push("Delta_xi (--field-file)");
        }
        let delta = missing.take("delta", args.delta);
        missing.check()?;
        let newton = read_polytope(args.delta_file.as_ref().expect("checked"), &ctx.limits)?;
        let xi = read_polytope(args.field_file.as_ref().expect("checked"), &ctx.limits)?;
        (newton, xi, delta)
    };
    let n = newton.dim() as u64;
    Ok(toric_bound(n, delta, &newton, &xi, chi)?)
}

fn pretty(report: &BoundReport) {
    eprintln!("theorem   {}", serde_json::to_string(&report.theorem).expect("serializable"));
    for (k, v) in &report.inputs {
        eprintln!("  input   {k:<28} {v}");
    }
    for (k, v) in &report.constants {
        let shown = v.to_string();
        if shown.len() <= 96 {
            eprintln!("  const   {k:<28} {shown}");
        }
    }
    eprintln!("  value   {}", report.value);
    for note in &report.notes {
        eprintln!("  note    {note}");
    }
}

pub fn run(args: &BoundArgs, ctx: Context) -> CliResult<()> {
    let name = theorem_name(args.theorem);
    let mut missing = Missing::new(&name);
    let report = match args.theorem {
        BoundTheorem::Nmorse => {
            let n = missing.take("n", args.n);
            let delta = missing.take("delta", args.delta);
            let d = missing.take("d", args.d);
            missing.check()?;
            let value = nmorse_bound(n, delta, d)?;
            let out = json!({
                "theorem": "nmorse",
                "inputs": {"n": n, "delta": delta, "d": d},
                "value": value.to_string(),
            });
            if ctx.pretty {
                eprintln!("nmorse(n={n}, delta={delta}, d={d}) = {value}");
            }
            emit(&out);
            return Ok(());
        }
        BoundTheorem::Pure => {
            let n = missing.take("n", args.n);
            let delta = missing.take("delta", args.delta);
            let d = missing.take("d", args.d);
            let chi = missing.take("chi", args.chi);
            missing.check()?;
            pure_bound(n, delta, d, chi)?
        }
        BoundTheorem::Toric => {
            let chi = missing.take("chi", args.chi);
            missing.check()?;
            toric(args, &ctx, chi)?
        }
        BoundTheorem::Mixed => {
            let dz = missing.take("dz", args.dz);
            let dx = missing.take("dx", args.dx);
            let chi = missing.take("chi", args.chi);
            missing.check()?;
            let (fd, n) = field_data(args, &ctx)?;
            mixed_single_bound(n, &fd, dz, dx, chi)?
        }
        BoundTheorem::MixedMulti => {
            let dz = missing.take("dz", args.dz);
            let dx = missing.take("dx", args.dx);
            let q = missing.take("q", args.q);
            let chi = missing.take("chi", args.chi);
            missing.check()?;
            let (fd, n) = field_data(args, &ctx)?;
            mixed_multi_bound(n, &fd, dz, dx, q, chi)?
        }
        BoundTheorem::CaseA | BoundTheorem::CaseB => {
            let input = CaseAbInput {
                m: missing.take("m", args.m),
                case: if args.theorem == BoundTheorem::CaseA { Case::A } else { Case::B },
                generator_degree: missing.take("D", args.generator_degree),
                d_z: missing.take("dz", args.dz),
                d_x: missing.take("dx", args.dx),
                q: missing.take("q", args.q),
                chi: missing.take("chi", args.chi),
                d: args.d,
            };
            missing.check()?;
            let (fd, n) = field_data(args, &ctx)?;
            caseab_bound(n, &fd, &input)?
        }
    };
    if ctx.pretty {
        pretty(&report);
    }
    emit(&report);
    Ok(())
}
