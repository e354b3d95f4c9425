//! Polarization: recovering an inner product from its norm.
//!
//! If a norm ‖·‖ is induced by some inner product, the product is determined
//! by
//!
//! ```text
//! real:    ⟨x, y⟩ = ¼ (‖x+y‖² − ‖x−y‖²)
//! complex: ⟨x, y⟩ = ¼ (‖x+y‖² − ‖x−y‖²) + (ι/4)(‖x+ιy‖² − ‖x−ιy‖²)
//! ```
//!
//! with the convention that the product is linear in its first argument.
//! [`reconstruct_gram`] applies the identity to basis pairs and revalidates
//! the assembled matrix, so a norm that was *not* induced by an inner
//! product is flagged by the Hermitian or positive-definiteness check.

use crate::error::{Error, Result};
use crate::gram::GramForm;
use crate::scalar::{Matrix, Scalar, ScalarField, Vector};
use crate::tol::Tolerances;

/// Recovers ⟨x, y⟩ from a norm oracle via the polarization identity for
/// `field`.
///
/// The caller asserts that `norm_oracle` is induced by some inner product on
/// the space; that hypothesis is not checkable pointwise.
pub fn polarize<F>(field: ScalarField, norm_oracle: F, x: &Vector, y: &Vector) -> Result<Scalar>
where
    F: Fn(&Vector) -> f64,
{
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    let sq = |v: &Vector| {
        let n = norm_oracle(v);
        n * n
    };
    let re = 0.25 * (sq(&(x + y)) - sq(&(x - y)));
    match field {
        ScalarField::Real => Ok(Scalar::new(re, 0.0)),
        ScalarField::Complex => {
            let iy = y * Scalar::i();
            let im = 0.25 * (sq(&(x + &iy)) - sq(&(x - &iy)));
            Ok(Scalar::new(re, im))
        }
    }
}

/// Rebuilds the full Gram matrix of the inner product inducing `norm_oracle`
/// on 𝔽ⁿ, using default tolerances for the final validation.
pub fn reconstruct_gram<F>(field: ScalarField, dim: usize, norm_oracle: F) -> Result<GramForm>
where
    F: Fn(&Vector) -> f64,
{
    reconstruct_gram_with(field, dim, norm_oracle, Tolerances::default())
}

/// [`reconstruct_gram`] with explicit tolerances.
///
/// Entry (i, j) is the polarized ⟨eⱼ, eᵢ⟩, matching the ⟨x,y⟩ = yᴴGx
/// encoding. A `NotHermitian` or `NotPositiveDefinite` error here is the
/// diagnostic that the oracle was not induced by an inner product.
pub fn reconstruct_gram_with<F>(
    field: ScalarField,
    dim: usize,
    norm_oracle: F,
    tol: Tolerances,
) -> Result<GramForm>
where
    F: Fn(&Vector) -> f64,
{
    if dim == 0 {
        return Err(Error::DimensionTooSmall { dim: 0 });
    }
    let basis: Vec<Vector> = (0..dim)
        .map(|k| {
            let mut e = Vector::zeros(dim);
            e[k] = Scalar::new(1.0, 0.0);
            e
        })
        .collect();
    let mut g = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = polarize(field, &norm_oracle, &basis[j], &basis[i])?;
        }
    }
    GramForm::with_tolerances(field, g, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{real_matrix, real_vector};
    use approx::assert_abs_diff_eq;

    #[test]
    fn euclidean_orthogonal_pair_polarizes_to_zero() {
        let g = GramForm::standard(ScalarField::Real, 2);
        let value = polarize(
            ScalarField::Real,
            |v| g.norm(v).unwrap(),
            &real_vector(&[1.0, 0.0]),
            &real_vector(&[0.0, 1.0]),
        )
        .unwrap();
        assert_abs_diff_eq!(value.re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn euclidean_polarization_from_first_principles() {
        // ¼(‖(2,1)‖² − ‖(0,−1)‖²) = ¼(5 − 1) = 1
        let g = GramForm::standard(ScalarField::Real, 2);
        let value = polarize(
            ScalarField::Real,
            |v| g.norm(v).unwrap(),
            &real_vector(&[1.0, 0.0]),
            &real_vector(&[1.0, 1.0]),
        )
        .unwrap();
        assert_abs_diff_eq!(value.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn sheared_form_off_diagonal_entry() {
        let g = GramForm::new(
            ScalarField::Real,
            real_matrix(&[&[1.0, -0.5], &[-0.5, 0.5]]),
        )
        .unwrap();
        let value = polarize(
            ScalarField::Real,
            |v| g.norm(v).unwrap(),
            &real_vector(&[1.0, 0.0]),
            &real_vector(&[0.0, 1.0]),
        )
        .unwrap();
        assert_abs_diff_eq!(value.re, -0.5, epsilon = 1e-14);
    }

    #[test]
    fn reconstructs_identity() {
        let g = GramForm::standard(ScalarField::Real, 2);
        let rec = reconstruct_gram(ScalarField::Real, 2, |v| g.norm(v).unwrap()).unwrap();
        assert!((rec.matrix() - g.matrix()).norm() < 1e-14);
    }

    #[test]
    fn reconstructs_the_sheared_form() {
        let m = real_matrix(&[&[1.0, -0.5], &[-0.5, 0.5]]);
        let g = GramForm::new(ScalarField::Real, m.clone()).unwrap();
        let rec = reconstruct_gram(ScalarField::Real, 2, |v| g.norm(v).unwrap()).unwrap();
        assert!((rec.matrix() - &m).norm() < 1e-14);
    }

    #[test]
    fn degenerate_seminorm_is_flagged() {
        // |x₁| is a seminorm killing e₂; the assembled matrix has a zero
        // pivot and fails positive definiteness
        let err = reconstruct_gram(ScalarField::Real, 2, |v| v[0].norm()).unwrap_err();
        assert!(matches!(err, Error::NotPositiveDefinite { .. }));
    }

    #[test]
    fn basiswise_polarization_cannot_see_every_non_norm() {
        // The sup norm polarizes basis-wise to the identity, so assembly
        // succeeds — and the reconstructed form then fails to reproduce the
        // oracle on a diagonal vector, which is the caller-side symptom.
        let sup = |v: &Vector| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let rec = reconstruct_gram(ScalarField::Real, 2, sup).unwrap();
        let diag = real_vector(&[1.0, 1.0]);
        assert!((rec.norm(&diag).unwrap() - sup(&diag)).abs() > 0.1);
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let err = polarize(
            ScalarField::Real,
            |_| 1.0,
            &real_vector(&[1.0]),
            &real_vector(&[1.0, 2.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }
}
