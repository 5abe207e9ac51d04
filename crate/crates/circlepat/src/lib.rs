//! Circle patterns with prescribed intersection angles on cellular surfaces.
//!
//! A [`CellularSurface`] carries the combinatorics. A [`PatternProblem`]
//! adds a geometry, an intersection angle per edge and a cone angle per face.
//! The radii are found by minimizing a convex functional ([`solver`]), the
//! pattern is checked for solvability by a network flow ([`coherent`]) and
//! developed into the plane, the disk or the sphere ([`layout`]).
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix `f64`.

// `!(x < y)` is how NaN is rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coherent;
pub mod energy;
pub mod error;
pub mod layout;
pub mod scalar;
pub mod solver;
pub mod specfun;
pub mod surface;

pub use coherent::{AngleSystem, FeasibilityReport, ValidationReport, Witness};
pub use energy::{Geometry, PatternProblem};
pub use error::{Error, Result};
pub use layout::{HermitianCircle, LayoutResult, MoebiusMap, ProjectivePoint};
pub use scalar::Scalar;
pub use solver::{SolveResult, SolveStatus};
pub use surface::CellularSurface;

pub type Problem = PatternProblem<f64>;
pub type Angles = AngleSystem<f64>;
pub type Feasibility = FeasibilityReport<f64>;
pub type Validation = ValidationReport<f64>;
pub type Solution = SolveResult<f64>;
pub type Layout = LayoutResult<f64>;
pub type Moebius = MoebiusMap<f64>;
pub type Circle = HermitianCircle<f64>;
pub type Point = ProjectivePoint<f64>;
