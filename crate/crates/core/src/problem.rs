//! Versioned problem files (`"multbound/1"`) and the builtin examples.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_polynomial, LaurentPolynomial, PolyVectorField};
use crate::builtin;
use crate::num::{self, Rational};
use crate::series::{
    FixedGerm, FuchsianSource, FuchsianSystem, GermJson, GermSource, Pins, RegularSource,
    TrajectoryGerm,
};
use crate::{Error, Result};

pub const SCHEMA_VERSION: &str = "multbound/1";

/// Expansion order of the fixed germ emitted for `power-a`.
const POWER_A_MIN_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    /// One expression per variable.
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_index: Option<usize>,
}

/// Coefficients fixed at one expansion order; `null` leaves a coordinate free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PinSpec {
    pub order: usize,
    pub values: Vec<Option<String>>,
}

/// How the trajectory is obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TrajectorySpec {
    /// Flow of the field through a regular point.
    Regular { point: Vec<String> },
    /// Fuchsian recursion from `z = 0`; `x0` lists the non-time coordinates
    /// and `pins` fixes coefficients at resonant orders.
    Fuchsian {
        x0: Vec<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        pins: Vec<PinSpec>,
    },
    /// A user-supplied germ known to a fixed order.
    Germ { germ: GermJson },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: String,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub trajectory: TrajectorySpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<String>,
    /// Bound theorems to evaluate next to each multiplicity.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<String>,
    /// The D-property constant, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A validated problem.
pub struct Problem {
    pub file: ProblemFile,
    pub field: Option<PolyVectorField>,
    pub polynomials: Vec<LaurentPolynomial>,
    source: Box<dyn GermSource>,
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem").field("file", &self.file).finish_non_exhaustive()
    }
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| num::parse_rational(s)).collect()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl ProblemFile {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(format!("problem file: {e}")))
    }

    /// Canonical single-line JSON.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Checks the schema and builds every object the file describes.
    pub fn validate(&self) -> Result<Problem> {
        if self.version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported schema version `{}`, expected `{SCHEMA_VERSION}`",
                self.version
            )));
        }
        if self.variables.is_empty() {
            return Err(Error::Invalid("at least one variable is required".into()));
        }
        let n = self.variables.len();
        let field = match &self.field {
            Some(spec) => {
                check_len(n, spec.components.len())?;
                let comps = spec
                    .components
                    .iter()
                    .map(|c| parse_polynomial(c, &self.variables))
                    .collect::<Result<Vec<_>>>()?;
                Some(PolyVectorField::new(comps, spec.time_index)?)
            }
            None => None,
        };
        let polynomials = self
            .polynomials
            .iter()
            .map(|p| parse_polynomial(p, &self.variables))
            .collect::<Result<Vec<_>>>()?;
        let source: Box<dyn GermSource> = match &self.trajectory {
            TrajectorySpec::Regular { point } => {
                let field = field
                    .clone()
                    .ok_or_else(|| Error::Invalid("a regular trajectory needs a field".into()))?;
                let point = rationals(point)?;
                check_len(n, point.len())?;
                Box::new(RegularSource { field, point })
            }
            TrajectorySpec::Fuchsian { x0, pins } => {
                let field = field
                    .as_ref()
                    .ok_or_else(|| Error::Invalid("a Fuchsian trajectory needs a field".into()))?;
                let system = FuchsianSystem::from_field(field)?;
                let x0 = rationals(x0)?;
                check_len(n - 1, x0.len())?;
                let mut parsed = Pins::new();
                for pin in pins {
                    check_len(n - 1, pin.values.len())?;
                    let row = pin
                        .values
                        .iter()
                        .map(|v| v.as_deref().map(num::parse_rational).transpose())
                        .collect::<Result<Vec<_>>>()?;
                    parsed.insert(pin.order, row);
                }
                Box::new(FuchsianSource {
                    system,
                    x0,
                    pins: parsed,
                })
            }
            TrajectorySpec::Germ { germ } => {
                check_len(n, germ.dim)?;
                Box::new(FixedGerm(TrajectoryGerm::from_json(germ)?))
            }
        };
        Ok(Problem {
            file: self.clone(),
            field,
            polynomials,
            source,
        })
    }
}

impl Problem {
    pub fn source(&self) -> &dyn GermSource {
        self.source.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.file.variables.len()
    }

    pub fn parse(&self, expr: &str) -> Result<LaurentPolynomial> {
        parse_polynomial(expr, &self.file.variables)
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(num::format_rational).collect()
}

fn field_spec(field: &PolyVectorField, vars: &[String]) -> FieldSpec {
    FieldSpec {
        components: field.components().iter().map(|c| c.to_expr(vars)).collect(),
        time_index: field.time_index(),
    }
}

/// The builtin problem `name`; `a` is the exponent for `power-a`.
pub fn example(name: &str, a: usize) -> Result<ProblemFile> {
    let xy = vec!["x".to_string(), "y".to_string()];
    let file = match name {
        "ramanujan" => {
            let vars = builtin::ramanujan_variables();
            let pins = builtin::ramanujan_pins()
                .into_iter()
                .map(|(order, row)| PinSpec {
                    order,
                    values: row.iter().map(|v| v.as_ref().map(num::format_rational)).collect(),
                })
                .collect();
            ProblemFile {
                version: SCHEMA_VERSION.into(),
                field: Some(field_spec(&builtin::ramanujan_field(), &vars)),
                variables: vars,
                trajectory: TrajectorySpec::Fuchsian {
                    x0: strings(&builtin::ramanujan_source().x0),
                    pins,
                },
                polynomials: vec!["X^2 - Y".into(), "X - 1".into(), "Y - 1".into(), "R - 1".into()],
                bounds: vec!["toric".into(), "mixed".into()],
                chi: Some(builtin::RAMANUJAN_CHI),
                note: Some("D-property at z = 0 with chi = 2".into()),
            }
        }
        "parabola" => ProblemFile {
            version: SCHEMA_VERSION.into(),
            field: Some(field_spec(&builtin::parabola_field(), &xy)),
            trajectory: TrajectorySpec::Regular {
                point: strings(&builtin::parabola_source().point),
            },
            variables: xy,
            polynomials: vec!["y".into()],
            bounds: Vec::new(),
            chi: None,
            note: None,
        },
        "power-a" => {
            if a == 0 {
                return Err(Error::Range("a must be at least 1".into()));
            }
            let order = POWER_A_MIN_ORDER.max(2 * a);
            ProblemFile {
                version: SCHEMA_VERSION.into(),
                field: Some(field_spec(&builtin::power_a_field(a as i64), &xy)),
                trajectory: TrajectorySpec::Germ {
                    germ: builtin::power_a_germ(a, order)?.to_json(),
                },
                variables: xy,
                polynomials: vec!["y".into()],
                bounds: Vec::new(),
                chi: None,
                note: Some(format!("germ (t, t^{a}) of the invariant curve y = x^{a}")),
            }
        }
        "linear-diagonal" => ProblemFile {
            version: SCHEMA_VERSION.into(),
            field: Some(field_spec(&builtin::linear_diagonal_field(), &xy)),
            trajectory: TrajectorySpec::Regular {
                point: strings(&builtin::linear_diagonal_source().point),
            },
            variables: xy,
            polynomials: vec!["y - x".into(), "x*y - 1".into()],
            bounds: Vec::new(),
            chi: None,
            note: None,
        },
        other => {
            return Err(Error::Unknown {
                kind: "example",
                name: other.into(),
            })
        }
    };
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mult::{multiplicity, MultOptions, MultiplicityResult};

    #[test]
    fn examples_validate_and_round_trip() {
        for name in builtin::NAMES {
            let f = example(name, 3).unwrap();
            let s = f.to_json_string();
            let back = ProblemFile::from_json_str(&s).unwrap();
            assert_eq!(back, f, "{name}");
            assert_eq!(back.to_json_string(), s);
            back.validate().unwrap();
        }
        assert!(example("nope", 1).is_err());
        assert!(example("power-a", 0).is_err());
    }

    #[test]
    fn examples_compute() {
        let opts = MultOptions::with_cap(64);
        let cases = [
            ("parabola", 1, "y", 2),
            ("ramanujan", 1, "X^2 - Y", 1),
            ("power-a", 7, "y", 7),
            ("linear-diagonal", 1, "y - x", 1),
        ];
        for (name, a, poly, want) in cases {
            let p = example(name, a).unwrap().validate().unwrap();
            let f = p.parse(poly).unwrap();
            let m = multiplicity(&f, p.source(), &opts).unwrap();
            assert_eq!(m, MultiplicityResult::Exact(want), "{name}");
        }
    }

    #[test]
    fn schema_rejections() {
        let mut f = example("parabola", 1).unwrap();
        f.version = "multbound/0".into();
        assert!(f.validate().is_err());
        let mut f = example("parabola", 1).unwrap();
        f.trajectory = TrajectorySpec::Regular {
            point: vec!["0".into()],
        };
        assert!(matches!(f.validate(), Err(Error::DimensionMismatch { .. })));
        let s = example("parabola", 1).unwrap().to_json_string().replace("\"version\"", "\"extra\":1,\"version\"");
        assert!(ProblemFile::from_json_str(&s).is_err());
    }
}
