//! Brute-force oracles and seeded property suites.
//!
//! Every trial draws from its own ChaCha8 stream (`seed`, stream = trial id),
//! so a suite run is reproducible trial by trial regardless of scheduling.

mod hilbert;
mod modular;
mod roots;
mod suites;
mod univariate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::ExponentVector;
use crate::exec::Execution;
use crate::{Error, Result};

pub use hilbert::{hf_parametrized, monomial_curve_width, simplex_monomials};
pub use roots::{count_torus_roots_2d, Degeneracy, RootCount};
pub use suites::bk_check;
pub use univariate::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bk,
    VolIvol,
    RolleOrder,
    RolleSingular,
    BoundSoundness,
    MixedVolume,
    DeltaAdditivity,
    Hilbert,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Bk,
        Suite::VolIvol,
        Suite::RolleOrder,
        Suite::RolleSingular,
        Suite::BoundSoundness,
        Suite::MixedVolume,
        Suite::DeltaAdditivity,
        Suite::Hilbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bk => "bk",
            Suite::VolIvol => "vol-ivol",
            Suite::RolleOrder => "rolle-order",
            Suite::RolleSingular => "rolle-singular",
            Suite::BoundSoundness => "bound-soundness",
            Suite::MixedVolume => "mixed-volume",
            Suite::DeltaAdditivity => "delta-additivity",
            Suite::Hilbert => "hilbert",
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Bk => 100,
            Suite::VolIvol => 500,
            Suite::RolleOrder => 200,
            Suite::RolleSingular => 50,
            Suite::BoundSoundness => 200,
            Suite::MixedVolume => 100,
            Suite::DeltaAdditivity => 100,
            Suite::Hilbert => 100,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "suite",
                name: s.to_string(),
            })
    }
}

/// Parameters of a seeded suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub trials: usize,
    /// Largest ambient dimension drawn.
    pub max_n: usize,
    /// Largest field degree `δ` drawn.
    pub max_delta: u64,
    /// Largest polynomial degree `d` drawn.
    pub max_degree: u64,
    /// Bit height of random coefficients in the root-counting suite.
    pub height_bits: u32,
    /// Fixed supports for the root-counting suite.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supports: Option<[Vec<ExponentVector>; 2]>,
}

impl InstanceSpec {
    pub fn for_suite(suite: Suite, seed: u64) -> Self {
        let (max_n, max_delta, max_degree) = match suite {
            Suite::Bk => (2, 1, 3),
            Suite::VolIvol | Suite::Hilbert => (4, 1, 10),
            Suite::RolleOrder | Suite::BoundSoundness => (3, 2, 4),
            Suite::RolleSingular => (4, 2, 2),
            Suite::MixedVolume | Suite::DeltaAdditivity => (3, 1, 2),
        };
        InstanceSpec {
            seed,
            trials: suite.default_trials(),
            max_n,
            max_delta,
            max_degree,
            height_bits: 32,
            supports: None,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }
}

/// One checked relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub relation: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub(crate) fn new(relation: &str, lhs: impl ToString, rhs: impl ToString, pass: bool) -> Self {
        Check {
            relation: relation.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Every draw, including regenerations, was non-generic.
    DegenerateRegenerated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub suite: Suite,
    pub id: usize,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    /// Draws rejected as degenerate before the reported one.
    pub regenerated: usize,
    /// Everything needed to replay the trial.
    pub instance: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub spec: InstanceSpec,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
    /// Total draws, counting regenerations.
    pub draws: usize,
    /// Draws rejected as degenerate.
    pub degenerate_draws: usize,
    #[serde(skip)]
    pub reports: Vec<TrialReport>,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn degenerate_rate(&self) -> f64 {
        if self.draws == 0 {
            0.0
        } else {
            self.degenerate_draws as f64 / self.draws as f64
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialReport> {
        self.reports.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    /// One JSON line per trial followed by the summary line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(self).expect("serializable"));
        out.push('\n');
        out
    }
}

/// Runs a suite deterministically; trials may execute concurrently.
pub fn run_property_suite(suite: Suite, spec: &InstanceSpec, exec: Execution) -> Result<SuiteSummary> {
    suites::validate(suite, spec)?;
    let reports = exec.map_range(spec.trials, |id| suites::run_trial(suite, spec, id));
    let mut summary = SuiteSummary {
        suite,
        spec: spec.clone(),
        passed: 0,
        failed: 0,
        degenerate: 0,
        draws: 0,
        degenerate_draws: 0,
        reports: Vec::with_capacity(reports.len()),
    };
    for r in reports {
        match r.verdict {
            Verdict::Pass => summary.passed += 1,
            Verdict::Fail => summary.failed += 1,
            Verdict::DegenerateRegenerated => summary.degenerate += 1,
        }
        let rejected = r.regenerated + usize::from(r.verdict == Verdict::DegenerateRegenerated);
        summary.draws += r.regenerated + 1;
        summary.degenerate_draws += rejected;
        summary.reports.push(r);
    }
    Ok(summary)
}

/// [`run_property_suite`] by suite name.
pub fn run_named_suite(name: &str, spec: &InstanceSpec, exec: Execution) -> Result<SuiteSummary> {
    run_property_suite(name.parse()?, spec, exec)
}

#[cfg(test)]
mod tests;
