use thiserror::Error;

/// Errors produced by every operation in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds tolerance {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("matrix is not positive definite: Cholesky pivot {pivot:e} at index {index}")]
    NotPositiveDefinite { pivot: f64, index: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("scalar field mismatch (real-tagged data must have zero imaginary parts)")]
    FieldMismatch,

    #[error("angle is undefined when one of the vectors is zero")]
    ZeroVectorAngle,

    #[error("Kähler angle is undefined for a collinear pair: sin θ = {sin_theta:e}")]
    KahlerDegenerate { sin_theta: f64 },

    #[error("this angle kind requires a complex scalar field")]
    KindRequiresComplex,

    #[error("pseudo-angle is undefined: the inner product is zero")]
    ZeroInnerProductArg,

    #[error("the forms are conformal: no witness pair exists")]
    FormsAreConformal,

    #[error("dimension {dim} is too small for this operation")]
    DimensionTooSmall { dim: usize },

    #[error("vectors are not orthogonal under the first form: |⟨x,y⟩₁| = {inner:e}")]
    NotOrthogonalIn1 { inner: f64 },

    #[error("operation requires a nonzero vector")]
    ZeroVector,

    #[error("angle parameter {theta0} lies outside the valid open interval")]
    ThetaOutOfRange { theta0: f64 },

    #[error("this construction is stated for real scalar fields only")]
    RequiresRealField,

    #[error("metric field sample is empty")]
    EmptySample,

    #[error("grid points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("at grid point {index}: {source}")]
    AtPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn at_point(self, index: usize) -> Error {
        Error::AtPoint {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
