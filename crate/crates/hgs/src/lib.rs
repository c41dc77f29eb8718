//! Hopf bifurcation analysis of the hexagonal centrifugal governor.
//!
//! The crate follows the analysis chain from the equations of motion to the
//! periodic orbits born at the stability boundary:
//!
//! - [`model`]: vector field, parameters, physical rescaling, equilibrium
//! - [`stability`]: Routh–Hurwitz, critical damping ε_c, Vyshnegradskii's rule
//! - [`hopf`]: projection method for the first Lyapunov coefficient l1
//! - [`closed_forms`]: closed-form R, l1, G1, G2
//! - [`orbit`]: adaptive integration and Poincaré-section orbit detection
//! - [`scan`]: sign maps and zero contours over parameter grids
//! - [`cli`], [`config`]: the `hgs` command line tool and its run configuration
//! - [`acceptance`]: the acceptance criteria behind `hgs verify`
//!
//! Runnable examples live in `examples/`, e.g. `cargo run --example hopf_point`.

// `!(a < b)` is used on purpose so NaN takes the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

pub mod acceptance;
pub mod cli;
pub mod closed_forms;
pub mod config;
pub mod error;
pub mod format;
pub mod hopf;
pub mod model;
pub mod numeric;
pub mod orbit;
pub mod scan;
pub mod stability;

pub use error::{HgsError, Result};
pub use model::{DimensionlessParams, PhysicalParams, State};
