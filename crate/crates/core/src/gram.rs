//! Validated Gram forms: inner products encoded by Hermitian positive
//! definite matrices.
//!
//! A [`GramForm`] over field 𝔽 on 𝔽ⁿ encodes the pairing
//!
//! ```text
//! ⟨x, y⟩ = yᴴ G x
//! ```
//!
//! which is linear in the first argument and conjugate-linear in the second.
//! Construction is validation: the matrix must be Hermitian within tolerance
//! (it is then symmetrized exactly) and positive definite, certified by a
//! Cholesky factorization whose pivots all clear the `pd` tolerance. The
//! factor is kept for later whitening work.

use crate::error::{Error, Result};
use crate::scalar::{max_abs, max_abs_vec, Matrix, Scalar, ScalarField, Vector};
use crate::tol::Tolerances;

/// An inner product on 𝔽ⁿ, held as a validated Hermitian positive definite
/// matrix together with its Cholesky factor.
#[derive(Debug, Clone, PartialEq)]
pub struct GramForm {
    field: ScalarField,
    dim: usize,
    matrix: Matrix,
    chol: Matrix,
    pivots: Vec<f64>,
    gmax: f64,
    tol: Tolerances,
}

impl GramForm {
    /// Validates `matrix` as a Gram matrix over `field` using default
    /// tolerances.
    pub fn new(field: ScalarField, matrix: Matrix) -> Result<Self> {
        Self::with_tolerances(field, matrix, Tolerances::default())
    }

    /// Validates `matrix` as a Gram matrix over `field`.
    ///
    /// Checks, in order: squareness and a positive dimension, finiteness of
    /// every entry, realness for real-tagged input, Hermitian symmetry
    /// within `tol.sym` (then repaired exactly by averaging with the
    /// adjoint), and positive definiteness via Cholesky with every pivot
    /// above `tol.pd` relative to the largest entry.
    pub fn with_tolerances(field: ScalarField, matrix: Matrix, tol: Tolerances) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.ncols(),
            });
        }
        if n == 0 {
            return Err(Error::DimensionTooSmall { dim: 0 });
        }
        for j in 0..n {
            for i in 0..n {
                let z = matrix[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry { row: i, col: j });
                }
                if field.is_real() && z.im != 0.0 {
                    return Err(Error::FieldMismatch);
                }
            }
        }

        let gmax = max_abs(&matrix);
        let mut asymmetry = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let d = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                asymmetry = asymmetry.max(d);
            }
        }
        let sym_tol = tol.sym * gmax;
        if asymmetry > sym_tol {
            return Err(Error::NotHermitian {
                asymmetry,
                tol: sym_tol,
            });
        }
        // (G + Gᴴ)/2 is exactly Hermitian entrywise in floating point.
        let matrix = (&matrix + matrix.adjoint()) * Scalar::new(0.5, 0.0);

        let (chol, pivots) = cholesky_lower(&matrix, tol.pd * gmax)?;

        Ok(GramForm {
            field,
            dim: n,
            matrix,
            chol,
            pivots,
            gmax,
            tol,
        })
    }

    /// The standard inner product on 𝔽ⁿ.
    pub fn standard(field: ScalarField, dim: usize) -> Self {
        GramForm::new(field, Matrix::identity(dim, dim))
            .expect("identity matrix is a valid Gram matrix")
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The validated (exactly Hermitian) Gram matrix.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Cholesky pivots encountered during validation, i.e. the values whose
    /// square roots form the diagonal of the lower factor.
    pub fn pivots(&self) -> &[f64] {
        &self.pivots
    }

    /// Lower-triangular L with G = L Lᴴ.
    pub fn cholesky_lower(&self) -> &Matrix {
        &self.chol
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Largest entry modulus of the Gram matrix.
    pub fn matrix_max(&self) -> f64 {
        self.gmax
    }

    /// ⟨x, y⟩ = yᴴ G x.
    pub fn inner(&self, x: &Vector, y: &Vector) -> Result<Scalar> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let gx = &self.matrix * x;
        Ok(y.dotc(&gx))
    }

    /// ‖x‖ = √⟨x, x⟩.
    ///
    /// The quadratic form is real up to rounding because the matrix is
    /// exactly Hermitian; a residual imaginary part beyond `tol.num` of the
    /// summand magnitude ‖G‖_max·‖x‖₂² is reported as an internal
    /// inconsistency.
    pub fn norm(&self, x: &Vector) -> Result<f64> {
        let q = self.inner(x, x)?;
        let scale = self.gmax * x.norm_squared();
        if q.im.abs() > self.tol.num * (1.0 + scale) {
            return Err(Error::Internal(format!(
                "quadratic form has imaginary part {:e}",
                q.im
            )));
        }
        Ok(q.re.max(0.0).sqrt())
    }

    /// ‖x‖‖y‖ − |⟨x, y⟩|, the slack in the Cauchy–Schwarz inequality.
    ///
    /// Nonnegative up to rounding for every input; zero exactly when the
    /// vectors are linearly dependent.
    pub fn cauchy_schwarz_gap(&self, x: &Vector, y: &Vector) -> Result<f64> {
        let ip = self.inner(x, y)?;
        Ok(self.norm(x)? * self.norm(y)? - ip.norm())
    }

    /// Whether `x` counts as zero for angle purposes: either exactly zero or
    /// with a form-norm below `tol.zero` relative to its entry scale.
    pub fn is_zero_vector(&self, x: &Vector) -> Result<bool> {
        let xmax = max_abs_vec(x);
        if xmax == 0.0 {
            return Ok(true);
        }
        let n = self.norm(x)?;
        Ok(n <= self.tol.zero * self.gmax.sqrt() * xmax)
    }

    pub(crate) fn check_vector(&self, x: &Vector) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        if self.field.is_real() && x.iter().any(|z| z.im != 0.0) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &GramForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }
}

/// Lower-triangular Cholesky factorization with an explicit pivot floor.
///
/// Returns `(L, pivots)` with `G = L Lᴴ`; fails with the offending pivot if
/// any diagonal residual drops to `pivot_floor` or below.
fn cholesky_lower(g: &Matrix, pivot_floor: f64) -> Result<(Matrix, Vec<f64>)> {
    let n = g.nrows();
    let mut l = Matrix::zeros(n, n);
    let mut pivots = Vec::with_capacity(n);
    for j in 0..n {
        let mut s = g[(j, j)].re;
        for k in 0..j {
            s -= l[(j, k)].norm_sqr();
        }
        if !s.is_finite() || s <= pivot_floor {
            return Err(Error::NotPositiveDefinite { pivot: s, index: j });
        }
        pivots.push(s);
        let d = s.sqrt();
        l[(j, j)] = Scalar::new(d, 0.0);
        for i in (j + 1)..n {
            let mut v = g[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = v / d;
        }
    }
    Ok((l, pivots))
}
