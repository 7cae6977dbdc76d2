//! Structured H-infinity model matching for the two-channel family
//! `L0 = I + a J2`, `L1 = b J2` with a diagonal controller.
//!
//! The optimal diagonal controller for this family is generally not rational:
//! its off-diagonal closed-loop entry is the conformal lens map `F_gamma`
//! composed with an inner rational function. This crate computes the optimal
//! cost, builds that controller, evaluates boundary norms, and produces the
//! sequence of polynomial approximants whose cost approaches (but never
//! reaches) the optimum.
//!
//! Modules, bottom-up:
//!
//! * [`complex_core`]: principal powers, polynomials, rational functions,
//!   truncated power series and the closed-form 2x2 largest singular value.
//! * [`conformal`]: the lens region and the disc-to-lens map with its inverse.
//! * [`hinf_norm`]: boundary-grid evaluation of the matching cost.
//! * [`interpolation`]: feasibility tests, bisection on gamma, recovery of the
//!   inner function and construction of the optimal controller.
//! * [`approximation`]: contour Taylor extraction, normalized approximants and
//!   the gap sequence.
//! * [`cli`]: the `lensmatch` command line tool.

pub mod approximation;
pub mod cli;
pub mod complex_core;
pub mod conformal;
mod error;
pub mod hinf_norm;
pub mod interpolation;

pub use error::{Error, Result};

pub use num_complex::Complex64;
