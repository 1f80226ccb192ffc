use thiserror::Error;

/// Errors surfaced by the library. Every guard that can trip on valid-looking
/// input gets its own variant so callers can report precisely what happened.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in the scalar field")]
    DivisionByZero,
    #[error("unsupported Coxeter label {0} (supported: 2..=6 and infinity)")]
    UnsupportedLabel(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("Cayley ball exceeded the element cap of {cap}")]
    BallCapExceeded { cap: usize },
    #[error("folding did not terminate within {cap} steps: point outside Tits cone or cap too low")]
    FoldCapExceeded { cap: usize },
    #[error("subset {0} is not spherical (parabolic subgroup is infinite)")]
    NotSpherical(String),
    #[error("element is not a member of the parabolic subgroup")]
    NotInParabolic,
    #[error("operation requires affine type, system has type {0}")]
    NotAffine(String),
    #[error("operation requires finite type, system has type {0}")]
    NotFinite(String),
}
