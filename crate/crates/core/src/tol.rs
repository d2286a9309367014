//! Tolerances shared across the crate.
//!
//! Every threshold that decides a pass/fail outcome lives here so that the
//! library, the CLI and the test suites agree on one set of numbers.

/// Orthonormality and duality checks on user-supplied vectors and forms.
pub const INPUT: f64 = 1e-9;

/// Maximum residual of any index symmetry for a tensor to count as valid.
pub const SYMMETRY: f64 = 1e-9;

/// Accuracy target of the Grassmannian scan, relative to the curvature scale.
pub const SCAN_ACCURACY: f64 = 1e-6;

/// Slack allowed when asserting a proved inequality numerically.
pub const INEQUALITY: f64 = 1e-9;

/// Slack below which an inequality is counted as attained with equality.
pub const NEAR_EQUALITY: f64 = 1e-6;

/// Tolerance for an identity checked through two independent code paths.
pub const IDENTITY: f64 = 1e-9;

/// A Weyl block counts as zero when its Frobenius norm is below this
/// (relative to the size of the curvature operator).
pub const HALF_FLAT: f64 = 1e-9;
