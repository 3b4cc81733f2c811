use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;

use multbound::exec::Execution;
use multbound::num::format_rational;
use multbound::polytope::{mixed_volume_with, quermassintegral, Polytope, PolytopeJson};

use crate::input::{read_json, read_polytope};
use crate::{emit, CliError, CliResult, Context};

#[derive(Debug, Args)]
pub struct Body {
    /// Polytope JSON: {"dim": n, "vertices": [[...], ...]}.
    #[arg(long, value_name = "FILE")]
    pub body: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum PolytopeCommand {
    /// Convex hull of the listed points, with vertex and facet forms.
    Hull(Body),
    /// Euclidean volume vol(Delta).
    Volume(Body),
    /// Number of lattice points ivol(Delta).
    Ivol(Body),
    /// Lattice points of the body.
    LatticePoints(Body),
    /// Mixed volume V(Delta_1, ..., Delta_n) of n bodies in dimension n.
    MixedVolume {
        #[arg(long, value_name = "FILE", num_args = 1.., required = true)]
        bodies: Vec<PathBuf>,
    },
    /// Minkowski sum of the bodies.
    Minkowski {
        #[arg(long, value_name = "FILE", num_args = 1.., required = true)]
        bodies: Vec<PathBuf>,
    },
    /// Quermassintegral W_j(Delta).
    Quermass {
        #[command(flatten)]
        body: Body,
        /// j: number of slots filled by the standard simplex.
        #[arg(short = 'j')]
        j: usize,
    },
    /// Pi-degree deg_Pi(Delta).
    PiDegree(Body),
    /// Truncation Delta_d = Delta ∩ [0, d]^n.
    Truncate {
        #[command(flatten)]
        body: Body,
        /// d: side of the box.
        #[arg(short = 'd')]
        d: u64,
    },
}

fn exec() -> Execution {
    Execution::default()
}

fn hull_of(path: &std::path::Path, ctx: &Context) -> CliResult<Polytope> {
    let raw: PolytopeJson = read_json(path)?;
    let pts = raw
        .vertices
        .iter()
        .map(|v| v.iter().map(|c| c.to_rational()).collect::<multbound::Result<Vec<_>>>())
        .collect::<multbound::Result<Vec<_>>>()
        .map_err(CliError::usage_from)?;
    if raw.dim > ctx.limits.max_dim {
        return Err(multbound::Error::DimensionGuard {
            dim: raw.dim,
            max: ctx.limits.max_dim,
        }
        .into());
    }
    Ok(Polytope::from_rational_points(raw.dim, pts)?)
}

fn show_2d(p: &Polytope) {
    if p.dim() == 2 {
        let coords: Vec<String> = p
            .vertices()
            .iter()
            .map(|v| format!("({}, {})", format_rational(&v[0]), format_rational(&v[1])))
            .collect();
        eprintln!("{}", coords.join(" "));
    }
}

fn emit_polytope(p: &Polytope, ctx: &Context) {
    if ctx.pretty {
        show_2d(p);
    }
    emit(&p.to_json());
}

fn load_all(paths: &[PathBuf], ctx: &Context) -> CliResult<Vec<Polytope>> {
    paths.iter().map(|p| read_polytope(p, &ctx.limits)).collect()
}

pub fn run(cmd: &PolytopeCommand, ctx: Context) -> CliResult<()> {
    let load = |b: &Body| read_polytope(&b.body, &ctx.limits);
    match cmd {
        PolytopeCommand::Hull(b) => emit_polytope(&hull_of(&b.body, &ctx)?, &ctx),
        PolytopeCommand::Volume(b) => {
            let p = load(b)?;
            emit(&json!({ "volume": format_rational(&p.volume()) }));
        }
        PolytopeCommand::Ivol(b) => {
            let p = load(b)?;
            let count = p.lattice_count_with(&ctx.limits, exec())?;
            emit(&json!({ "ivol": count.to_string() }));
        }
        PolytopeCommand::LatticePoints(b) => {
            let p = load(b)?;
            let pts = p.lattice_points_with(&ctx.limits)?;
            emit(&json!({ "dim": p.dim(), "points": pts }));
        }
        PolytopeCommand::MixedVolume { bodies } => {
            let ps = load_all(bodies, &ctx)?;
            let refs: Vec<&Polytope> = ps.iter().collect();
            let v = mixed_volume_with(&refs, exec())?;
            emit(&json!({ "mixed_volume": format_rational(&v) }));
        }
        PolytopeCommand::Minkowski { bodies } => {
            let ps = load_all(bodies, &ctx)?;
            let mut sum = ps[0].clone();
            for p in &ps[1..] {
                sum = sum.minkowski_sum(p)?;
            }
            emit_polytope(&sum, &ctx);
        }
        PolytopeCommand::Quermass { body, j } => {
            let p = load(body)?;
            let w = quermassintegral(&p, *j)?;
            emit(&json!({ "j": j, "quermassintegral": format_rational(&w) }));
        }
        PolytopeCommand::PiDegree(b) => {
            let p = load(b)?;
            emit(&json!({ "pi_degree": p.pi_degree().to_string() }));
        }
        PolytopeCommand::Truncate { body, d } => {
            let p = load(body)?;
            match p.truncate_to_box(*d) {
                Some(t) => emit_polytope(&t, &ctx),
                None => emit(&json!({ "empty": true })),
            }
        }
    }
    Ok(())
}
