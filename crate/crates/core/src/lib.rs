//! Preprojective algebras of quivers, built three ways and checked against
//! each other in exact arithmetic.
//!
//! * [`relations::lambda_co`]: the quotient of the doubled path algebra by the
//!   preprojective relations.
//! * [`mesh::lambda_ho`]: Hom spaces of the mesh category of `ℤQ`.
//! * [`homology::lambda_te`]: the tensor algebra of `Ω = Ext¹(DA, A)`.
//!
//! All three produce a [`GradedDimTable`] graded by the number of starred
//! arrows.

pub mod dot;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod mesh;
pub mod paths;
pub mod quiver;
pub mod relations;
pub mod report;
pub mod scalar;
pub mod scaling;

pub use error::{Error, Result};
pub use homology::{lambda_te, omega, tau_minus, Bimodule, Representation};
pub use mesh::{build_window, lambda_ho, verify_covering_iso, TranslationWindow};
pub use paths::{GradedDimTable, Grading, PathElement, PathQuiver, StopPolicy};
pub use quiver::{classify, double, generate, parse_quiver, positive_roots, DoubledQuiver, DynkinType, Quiver};
pub use relations::{lambda_co, QAssignment};
pub use report::{Check, RunReport};
pub use scalar::{Field, Scalar};
pub use scaling::{solve_scaling, verify_scaling, ScalingSolution};
