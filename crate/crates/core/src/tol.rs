/// Numerical tolerances used across the crate.
///
/// Fields `sym` and `pd` are relative to the largest entry modulus of the
/// Gram matrix they validate; `num`, `zero`, `kahler`, and `conf` are
/// relative thresholds in the sense documented per field. The defaults are
/// sized for double precision at dimensions up to a few dozen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest admissible Hermitian asymmetry, relative to the largest
    /// matrix entry. Asymmetry below this is repaired by averaging with the
    /// adjoint; above it the matrix is rejected.
    pub sym: f64,
    /// Smallest admissible Cholesky pivot, relative to the largest matrix
    /// entry. A pivot at or below this threshold means "not positive
    /// definite".
    pub pd: f64,
    /// General relative tolerance for numerical identities (conjugate
    /// symmetry, angle consistency, orthogonality of constructed vectors).
    pub num: f64,
    /// Relative threshold below which a vector counts as zero.
    pub zero: f64,
    /// Smallest sin θ for which the Kähler angle is still computed; below
    /// it the pair is treated as collinear.
    pub kahler: f64,
    /// Conformality decision threshold: the relative Frobenius residual
    /// (equivalently the relative spread of the whitened spectrum) below
    /// which two forms count as proportional.
    pub conf: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym: 1e-10,
            pd: 1e-12,
            num: 1e-9,
            zero: 1e-12,
            kahler: 1e-8,
            conf: 1e-8,
        }
    }
}

impl Tolerances {
    /// Same defaults with a different conformality threshold.
    pub fn with_conf(conf: f64) -> Self {
        Tolerances {
            conf,
            ..Tolerances::default()
        }
    }
}
