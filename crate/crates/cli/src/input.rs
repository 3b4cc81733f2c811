//! Reading problems, polytopes and germs from files and flags.

use std::fs;
use std::path::Path;

use clap::Args;
use multbound::algebra::default_variables;
use multbound::num::{format_rational, parse_rational};
use multbound::polytope::{Limits, Polytope};
use multbound::problem::{example, FieldSpec, Problem, ProblemFile, TrajectorySpec, SCHEMA_VERSION};
use multbound::series::GermJson;

use crate::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_polytope(path: &Path, limits: &Limits) -> CliResult<Polytope> {
    let p = Polytope::from_json_str(&read(path)?).map_err(CliError::usage_from)?;
    if p.dim() > limits.max_dim {
        return Err(multbound::Error::DimensionGuard {
            dim: p.dim(),
            max: limits.max_dim,
        }
        .into());
    }
    Ok(p)
}

/// Comma-separated rationals.
pub fn parse_point(s: &str) -> CliResult<Vec<String>> {
    s.split(',')
        .map(|c| {
            let c = c.trim();
            parse_rational(c)
                .map(|r| format_rational(&r))
                .map_err(|e| CliError::usage(format!("bad coordinate `{c}`: {e}")))
        })
        .collect()
}

/// Where the field and trajectory come from.
#[derive(Debug, Default, Args)]
pub struct ProblemArgs {
    /// A problem file (schema multbound/1).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["example", "field"])]
    pub problem: Option<std::path::PathBuf>,
    /// A builtin problem: ramanujan, parabola, power-a, linear-diagonal.
    #[arg(long, value_name = "NAME", conflicts_with = "field")]
    pub example: Option<String>,
    /// Exponent a for `--example power-a`.
    #[arg(long, default_value_t = 5)]
    pub a: usize,
    /// Field component ξ_i, one flag per variable, in variable order.
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub field: Vec<String>,
    /// Comma-separated variable names (default x1,...,xn).
    #[arg(long, value_name = "NAMES")]
    pub vars: Option<String>,
    /// Index of the time coordinate z among the variables.
    #[arg(long, value_name = "I")]
    pub time_index: Option<usize>,
    /// Regular base point p, comma-separated.
    #[arg(long, value_name = "P", allow_hyphen_values = true, conflicts_with = "germ")]
    pub point: Option<String>,
    /// A user-supplied germ file.
    #[arg(long, value_name = "FILE")]
    pub germ: Option<std::path::PathBuf>,
}

impl ProblemArgs {
    pub fn is_given(&self) -> bool {
        self.problem.is_some() || self.example.is_some() || !self.field.is_empty() || self.germ.is_some()
    }

    fn variables(&self, n: usize) -> CliResult<Vec<String>> {
        match &self.vars {
            Some(v) => {
                let names: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
                if names.len() != n {
                    return Err(CliError::usage(format!(
                        "--vars names {} variables, the input has {n}",
                        names.len()
                    )));
                }
                Ok(names)
            }
            None => Ok(default_variables(n)),
        }
    }

    pub fn file(&self) -> CliResult<ProblemFile> {
        if let Some(path) = &self.problem {
            return ProblemFile::from_json_str(&read(path)?).map_err(CliError::usage_from);
        }
        if let Some(name) = &self.example {
            return example(name, self.a).map_err(CliError::usage_from);
        }
        let germ: Option<GermJson> = self.germ.as_deref().map(read_json).transpose()?;
        let n = match (&germ, self.field.len()) {
            (Some(g), _) => g.dim,
            (None, 0) => {
                return Err(CliError::usage(
                    "give --problem, --example, --field with --point, or --germ",
                ))
            }
            (None, k) => k,
        };
        let field = if self.field.is_empty() {
            None
        } else {
            Some(FieldSpec {
                components: self.field.clone(),
                time_index: self.time_index,
            })
        };
        let trajectory = match (germ, &self.point) {
            (Some(germ), _) => TrajectorySpec::Germ { germ },
            (None, Some(p)) => TrajectorySpec::Regular {
                point: parse_point(p)?,
            },
            (None, None) => return Err(CliError::usage("--field needs --point or --germ")),
        };
        Ok(ProblemFile {
            version: SCHEMA_VERSION.into(),
            variables: self.variables(n)?,
            field,
            trajectory,
            polynomials: Vec::new(),
            bounds: Vec::new(),
            chi: None,
            note: None,
        })
    }

    pub fn load(&self) -> CliResult<Problem> {
        self.file()?.validate().map_err(CliError::usage_from)
    }
}
