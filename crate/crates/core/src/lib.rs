//! Equilibrium configurations of a planar platform held by three linear
//! springs and pressed against a rigid straight surface.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod case_i;
pub mod case_ii;
pub mod error;
pub mod free_pose;
pub mod geometry;
pub mod model;
pub mod pipeline;
pub mod resultant;
pub mod scalar;
pub mod solution;

pub use case_i::{solve_case_i, solve_case_i_detailed, CaseIOutcome};
pub use case_ii::{
    resultant_polynomial, solve_case_ii, solve_case_ii_detailed, AcceptanceFilter, CaseIIOptions, CaseIIOutcome,
};
pub use error::{Error, Result};
pub use free_pose::{free_pose, O2Choice};
pub use geometry::{ContactClass, Line2, PlaneSpec, Point2, Transform2H};
pub use model::{ContactPose, MechanismParams, SpringState};
pub use pipeline::{run_analysis, AnalysisOptions, AnalysisReport, CaseSelection, Counts, SolvedCase};
pub use resultant::CPolynomial;
pub use scalar::DoubleDouble;
pub use solution::{EquilibriumSolution, SqrtBranch, Verdict};
