use alloc::string::String;

/// Failures raised by model construction and verification operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not selfadjoint (defect {defect:e})")]
    NotSelfadjoint { defect: f64 },
    #[error("truncation profile mismatch: {0}")]
    ProfileMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("pair is not compatible over the base (defect {defect:e}, tolerance {tolerance:e})")]
    Incompatible { defect: f64, tolerance: f64 },
    #[error("diagram {0} has no registered lift rule")]
    NoLiftRule(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("unknown space {0}")]
    UnknownSpace(String),
    #[error("unknown diagram {0}")]
    UnknownDiagram(String),
    #[error("symbol coefficient of degree {degree} exceeds the circle window")]
    WindowExceeded { degree: i64 },
    #[error("diagonal {diagonal} does not stabilize (relative variance {relative_variance:e})")]
    SymbolUnstable { diagonal: i64, relative_variance: f64 },
    #[error("lift does not project to the base element (defect {defect:e})")]
    LiftDefect { defect: f64 },
    #[error("result is not idempotent (defect {defect:e})")]
    NotIdempotent { defect: f64 },
    #[error("function vanishes on the circle (min modulus {min_modulus:e})")]
    NotInvertibleOnCircle { min_modulus: f64 },
    #[error("index by winding ({by_symbol}) disagrees with kernel counting ({by_kernel})")]
    NotFredholmAtTruncation { by_symbol: i64, by_kernel: i64 },
    #[error("no character registered for this element kind")]
    CharacterUndefined,
    #[error("charge did not converge (rounding defect {defect:e})")]
    ChargeNotConverged { defect: f64 },
    #[error("path sample at t = {t} fails (norm {norm:e})")]
    PathDefect { t: f64, norm: f64 },
    #[error("degree {degree} too large for sampling order {order}")]
    DegreeOverflow { degree: i64, order: usize },
    #[error("clutching matrix is not invertible (defect {defect:e})")]
    NotInvertible { defect: f64 },
    #[error("element is not homogeneous of degree zero")]
    NotInvariant,
}

pub type Result<T> = core::result::Result<T, Error>;
