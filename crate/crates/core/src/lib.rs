//! Multiplicity estimates for trajectories of polynomial vector fields.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact Laurent polynomials, vector fields and Lie derivatives.
//! * [`polytope`]: exact lattice-polytope engine (hulls, Minkowski sums,
//!   volumes, mixed volumes, quermassintegrals, lattice counts).
//! * [`series`]: truncated power series and trajectory germs of polynomial,
//!   rational and Fuchsian ODE systems.
//! * [`mult`]: the multiplicity oracle and trajectory-level order checks.
//! * [`bounds`]: every explicit multiplicity bound with its constant chain.
//! * [`verify`]: brute-force oracles and seeded property suites.
//! * [`builtin`]: the builtin example systems.
//! * [`problem`]: versioned problem files.
//!
//! All arithmetic is exact (arbitrary precision integers and rationals).
//! Data-parallel loops go through [`exec::Execution`]; with the `parallel`
//! feature disabled every loop runs sequentially.

pub mod algebra;
pub mod bounds;
pub mod builtin;
mod error;
pub mod exec;
pub mod mult;
pub mod num;
pub mod polytope;
pub mod problem;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
