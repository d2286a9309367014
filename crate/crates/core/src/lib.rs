//! Pointwise curvature algebra of oriented Riemannian four-manifolds.
//!
//! The crate works with a single algebraic curvature tensor at a point and
//! provides
//!
//! * two-forms, the Hodge star and the Grassmannian of planes ([`forms`]),
//! * the block decomposition `ℛ = U + W⁺ + W⁻ + Z` ([`curvature`]),
//! * global scans of sectional and biorthogonal curvature ([`scan`]),
//! * the Weitzenböck curvature term on 2-forms and its lower bound
//!   ([`weitzenbock`]),
//! * Ville-type estimates under pinching ([`ville`]),
//! * Gauss–Bonnet–Chern and signature integrands ([`topology`]),
//! * the pinching-constant derivation and theorem verdicts ([`pinching`]),
//! * built-in model spaces and random pinched samples ([`models`]).
//!
//! The `pinch4` binary in this package is a thin front end over [`cli`].

pub mod check;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod forms;
pub mod models;
mod nelder_mead;
pub mod pinching;
pub mod scan;
pub mod tol;
pub mod topology;
pub mod ville;
pub mod weitzenbock;

pub use check::CheckReport;
pub use curvature::{decompose, random_algebraic_tensor, CurvatureDecomposition, CurvatureOperator, RiemannTensor};
pub use error::{Error, Result};
pub use forms::{Form2, Frame4, Plane2};
pub use models::{ModelName, ModelSpace};
pub use pinching::TheoremVerdict;
pub use scan::{Budget, PinchingReport};
