//! Synthesis of small-norm valid games for `t_τ` on finite grids.
//!
//! Validity is a continuum of constraints in `λ`; the LP enforces it at
//! samples, and exact checks of the rounded solution feed violated `λ*` back
//! as cuts. Only exactly verified games are reported.

pub mod grid;
pub mod instance;
pub mod simplex;
pub mod synth;

use thiserror::Error;

use crate::profile::ProfileError;

pub use grid::{build_grid, Geometric, GridSpec};
pub use instance::{Cmp, Constraint, ConstraintKind, LpInstance};
pub use simplex::{solve_exact, ExactOutcome, EXACT_MAX_VARS};
pub use synth::{
    default_lambda_samples, relaxation_objective, round_and_repair, scan_tau, synthesize_tipg, verify_symmetric,
    write_scan_csv, Cut, ScanReport, ScanRow, SynthesisOptions, SynthesisResult, SynthesisStatus,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("bad instance: {0}")]
    BadSamples(String),
    #[error("instance has {0} variables, above the exact limit")]
    TooLarge(usize),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}
