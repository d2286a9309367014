use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input vectors are not orthonormal (norm defect {norm_defect:.3e}, inner product {inner:.3e})")]
    NonOrthonormalInput { norm_defect: f64, inner: f64 },

    #[error("input forms are not unit (|H| = {h_norm}, |K| = {k_norm})")]
    NonUnitInput { h_norm: f64, k_norm: f64 },

    #[error("{0} has the wrong duality (residual {1:.3e})")]
    WrongDuality(&'static str, f64),

    #[error("curvature tensor violates its symmetries (max residual {0:.3e})")]
    InvalidSymmetry(f64),

    #[error("scan budget below floor: {0}")]
    BudgetTooSmall(String),

    #[error("cannot build an adapted frame for the zero form")]
    DegenerateForm,

    #[error("pinching {delta} <= K <= 1 not verified (scan found K in [{k_min}, {k_max}])")]
    PinchingNotVerified { delta: f64, k_min: f64, k_max: f64 },

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    #[error("{name} must be positive, got {value}")]
    NonPositiveInput { name: &'static str, value: f64 },

    #[error("scalar curvature must be positive, got {0}")]
    NonPositiveScalarCurvature(f64),

    #[error("model `{0}` is not homogeneous; invariants need a pointwise-constant integrand")]
    NotHomogeneous(String),

    #[error("unknown model `{0}` (expected one of S4, CP2, S2xS2, FlatT4)")]
    UnknownModel(String),

    #[error("model parameter `{name}` must be positive, got {value}")]
    NonPositiveParam { name: &'static str, value: f64 },

    #[error("no sample accepted after {0} attempts")]
    SamplingExhausted(usize),

    #[error("malformed tensor JSON at line {line}, column {column}: {message}\n  {context}")]
    MalformedJson {
        line: usize,
        column: usize,
        message: String,
        context: String,
    },
}
