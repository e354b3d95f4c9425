//! Scalar field tags and the concrete vector/matrix types used everywhere.
//!
//! Both fields share one storage type: every entry is a `Complex<f64>`, and a
//! [`ScalarField::Real`] tag promises that all imaginary parts are exactly
//! zero. This keeps real and complex code paths identical except where the
//! mathematics genuinely differs (polarization, the Kähler angle).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

/// The scalar entry type: a double-precision complex number.
pub type Scalar = Complex<f64>;

/// A column vector over [`Scalar`].
pub type Vector = DVector<Scalar>;

/// A dense square matrix over [`Scalar`].
pub type Matrix = DMatrix<Scalar>;

/// Which base field a form (and its vectors) lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Real,
    Complex,
}

impl ScalarField {
    pub fn is_real(self) -> bool {
        matches!(self, ScalarField::Real)
    }
}

impl std::fmt::Display for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarField::Real => write!(f, "real"),
            ScalarField::Complex => write!(f, "complex"),
        }
    }
}

/// Builds a vector with the given real entries (imaginary parts zero).
pub fn real_vector(entries: &[f64]) -> Vector {
    Vector::from_iterator(entries.len(), entries.iter().map(|&x| Scalar::new(x, 0.0)))
}

/// Builds a vector from `(re, im)` pairs.
pub fn complex_vector(entries: &[(f64, f64)]) -> Vector {
    Vector::from_iterator(
        entries.len(),
        entries.iter().map(|&(re, im)| Scalar::new(re, im)),
    )
}

/// Builds a square matrix from real-valued rows.
///
/// Panics if the rows are ragged or do not form a square matrix; this is a
/// literal-construction helper, not a validation entry point.
pub fn real_matrix(rows: &[&[f64]]) -> Matrix {
    let n = rows.len();
    for row in rows {
        assert_eq!(row.len(), n, "real_matrix requires square input");
    }
    Matrix::from_fn(n, n, |i, j| Scalar::new(rows[i][j], 0.0))
}

/// Builds a square matrix from rows of `(re, im)` pairs.
pub fn complex_matrix(rows: &[&[(f64, f64)]]) -> Matrix {
    let n = rows.len();
    for row in rows {
        assert_eq!(row.len(), n, "complex_matrix requires square input");
    }
    Matrix::from_fn(n, n, |i, j| {
        let (re, im) = rows[i][j];
        Scalar::new(re, im)
    })
}

/// Principal argument in (−π, π], with the real axis handled exactly so that
/// negative reals map to +π (never −π, which `atan2` produces for −0.0 parts).
pub(crate) fn principal_arg(z: Scalar) -> f64 {
    if z.im == 0.0 {
        if z.re >= 0.0 {
            0.0
        } else {
            std::f64::consts::PI
        }
    } else {
        z.im.atan2(z.re)
    }
}

/// Largest entry modulus of a matrix.
pub(crate) fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry modulus of a vector.
pub(crate) fn max_abs_vec(x: &Vector) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn principal_arg_real_axis() {
        assert_eq!(principal_arg(Scalar::new(2.0, 0.0)), 0.0);
        assert_eq!(principal_arg(Scalar::new(-2.0, 0.0)), PI);
        assert_eq!(principal_arg(Scalar::new(-2.0, -0.0)), PI);
    }

    #[test]
    fn principal_arg_quadrants() {
        assert!((principal_arg(Scalar::new(0.0, 1.0)) - PI / 2.0).abs() < 1e-15);
        assert!((principal_arg(Scalar::new(0.0, -1.0)) + PI / 2.0).abs() < 1e-15);
        assert!((principal_arg(Scalar::new(-1.0, -1.0)) + 3.0 * PI / 4.0).abs() < 1e-15);
    }
}
