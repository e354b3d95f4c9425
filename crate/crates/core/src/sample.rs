//! Seeded random generators for vectors and Gram forms.
//!
//! Everything here is deterministic given the RNG state, which the
//! randomized checks in this crate rely on for reproducibility.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gram::GramForm;
use crate::scalar::{Matrix, Scalar, ScalarField, Vector};

/// A reproducible RNG for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry<R: Rng>(rng: &mut R, field: ScalarField) -> Scalar {
    match field {
        ScalarField::Real => Scalar::new(rng.random_range(-1.0..1.0), 0.0),
        ScalarField::Complex => Scalar::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ),
    }
}

/// A vector with entries uniform in [−1, 1) (each component, both parts for
/// complex).
pub fn random_vector<R: Rng>(rng: &mut R, field: ScalarField, dim: usize) -> Vector {
    Vector::from_fn(dim, |_, _| entry(rng, field))
}

/// A well-conditioned random Gram form: G = AᴴA + I with A uniform.
pub fn random_gram<R: Rng>(rng: &mut R, field: ScalarField, dim: usize) -> GramForm {
    let a = Matrix::from_fn(dim, dim, |_, _| entry(rng, field));
    let g = a.adjoint() * &a + Matrix::identity(dim, dim);
    GramForm::new(field, g).expect("AᴴA + I is Hermitian positive definite")
}

/// A conformal pair (G, cG).
pub fn random_conformal_pair<R: Rng>(
    rng: &mut R,
    field: ScalarField,
    dim: usize,
    factor: f64,
) -> (GramForm, GramForm) {
    let g1 = random_gram(rng, field, dim);
    let g2 = GramForm::new(field, g1.matrix() * Scalar::new(factor, 0.0))
        .expect("positive multiple of a Gram matrix is a Gram matrix");
    (g1, g2)
}

/// A pair (G₁, G₂) whose whitened spectrum has relative spread at least
/// `min_separation` (must be below 1/2), so the pair is decisively
/// non-conformal.
///
/// Writes G₂ = L D Lᴴ over the Cholesky factor L of G₁, with D diagonal and
/// its extreme entries pinned to the requested separation; whitening G₂ by
/// G₁ then reproduces D exactly up to rounding.
pub fn random_separated_pair<R: Rng>(
    rng: &mut R,
    field: ScalarField,
    dim: usize,
    min_separation: f64,
) -> (GramForm, GramForm) {
    assert!(dim >= 2, "separated pairs need dimension at least 2");
    assert!(
        (0.0..0.5).contains(&min_separation),
        "min_separation must lie in [0, 1/2)"
    );
    let g1 = random_gram(rng, field, dim);
    let spread = rng.random_range((2.0 * min_separation)..1.0);
    let lo = rng.random_range(0.5..2.0);
    let hi = lo * (1.0 + spread);
    let mut diag = vec![0.0f64; dim];
    diag[0] = lo;
    diag[dim - 1] = hi;
    for d in diag.iter_mut().take(dim - 1).skip(1) {
        *d = rng.random_range(lo..hi);
    }
    let l = g1.cholesky_lower();
    let dm = Matrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Scalar::new(diag[i], 0.0)
        } else {
            Scalar::new(0.0, 0.0)
        }
    });
    let g2 = l * dm * l.adjoint();
    let g2 = GramForm::new(field, g2).expect("congruence of a PD diagonal is PD");
    (g1, g2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity;

    #[test]
    fn random_gram_is_reproducible() {
        let a = random_gram(&mut rng(3), ScalarField::Complex, 4);
        let b = random_gram(&mut rng(3), ScalarField::Complex, 4);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn separated_pair_is_not_conformal() {
        let mut r = rng(5);
        for field in [ScalarField::Real, ScalarField::Complex] {
            let (g1, g2) = random_separated_pair(&mut r, field, 4, 1e-3);
            let v = rigidity::check_conformal(&g1, &g2).unwrap();
            assert!(!v.conformal);
        }
    }

    #[test]
    fn conformal_pair_is_conformal() {
        let mut r = rng(6);
        let (g1, g2) = random_conformal_pair(&mut r, ScalarField::Real, 5, 0.125);
        let v = rigidity::check_conformal(&g1, &g2).unwrap();
        assert!(v.conformal);
        assert!((v.factor.unwrap() - 0.125).abs() < 1e-12);
    }
}
