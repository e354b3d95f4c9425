//! Numerical toolkit for finite-dimensional real and complex inner-product
//! spaces.
//!
//! The crate computes the classical angle notions between vectors (Euclidean,
//! complex cosine, Hermitian, pseudo-angle, Kähler), reconstructs inner
//! products from norms via polarization, and decides whether two inner
//! products on the same space are conformal — i.e. positive multiples of one
//! another. When they are not, it produces explicit witness pairs: two
//! vectors that are orthogonal under one form but not the other, or that
//! enclose a chosen angle θ₀ under one form and a different angle under the
//! other. A small pointwise layer lifts the same decision to sampled metric
//! fields.
//!
//! Inner products are encoded by Hermitian positive definite Gram matrices
//! with the pairing ⟨x, y⟩ = yᴴGx, linear in the first argument. Validation
//! happens at construction ([`GramForm::new`]); everything downstream is a
//! pure function of validated inputs, safe for unrestricted concurrent use.
//!
//! ```
//! use innerspace::{real_matrix, real_vector, AngleKind, GramForm, ScalarField};
//!
//! let g1 = GramForm::standard(ScalarField::Real, 2);
//! let g2 = GramForm::new(
//!     ScalarField::Real,
//!     real_matrix(&[&[1.0, -0.5], &[-0.5, 0.5]]),
//! )?;
//!
//! // one pair enclosing the same angle under both forms ...
//! let x = real_vector(&[1.0, 0.0]);
//! let y = real_vector(&[1.0, 1.0]);
//! let t1 = g1.angle(&x, &y, AngleKind::Euclidean)?.theta.unwrap();
//! let t2 = g2.angle(&x, &y, AngleKind::Euclidean)?.theta.unwrap();
//! assert!((t1 - t2).abs() < 1e-12);
//!
//! // ... does not make the forms conformal; the verdict carries a witness.
//! let verdict = innerspace::rigidity::check_conformal(&g1, &g2)?;
//! assert!(!verdict.conformal);
//! assert!(verdict.witness.is_some());
//! # Ok::<(), innerspace::Error>(())
//! ```

pub mod angle;
pub mod error;
pub mod gram;
pub mod metricfield;
pub mod polarize;
pub mod rigidity;
pub mod sample;
pub mod scalar;
pub mod tol;

pub use angle::{AngleKind, AngleValue};
pub use error::{Error, Result};
pub use gram::GramForm;
pub use metricfield::{ConformalFactorField, FieldVerdict, MetricFieldSample};
pub use polarize::{polarize, reconstruct_gram, reconstruct_gram_with};
pub use rigidity::{
    ConformalityVerdict, EquivalenceReport, FixedAngleCheck, FourVectorFrame, WitnessKind,
    WitnessPair,
};
pub use scalar::{
    complex_matrix, complex_vector, real_matrix, real_vector, Matrix, Scalar, ScalarField, Vector,
};
pub use tol::Tolerances;
