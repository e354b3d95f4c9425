//! The five angle notions between nonzero vectors.
//!
//! Writing ⟨x,y⟩ for the form's pairing and ‖·‖ for its norm, the kinds are
//!
//! * `Euclidean` — θ ∈ [0, π] with cos θ = Re⟨x,y⟩ / (‖x‖‖y‖); the working
//!   definition over both fields.
//! * `ComplexCos` — the complex number cos θ_C = ⟨x,y⟩ / (‖x‖‖y‖) itself. No
//!   branch of the complex arccos is chosen, so [`AngleValue::theta`] is
//!   absent.
//! * `Hermitian` — θ_H ∈ [0, π/2] with cos θ_H = |⟨x,y⟩| / (‖x‖‖y‖).
//! * `Pseudo` — the principal argument of ⟨x,y⟩ in (−π, π], equal to
//!   Arg cos θ_C. On a real form this is 0 or π by sign.
//! * `Kahler` — θ_K with cos θ_K · sin θ = Re⟨ιx,y⟩ / (‖x‖‖y‖), where θ is
//!   the Euclidean angle; measures how far the real plane spanned by the
//!   pair is from ι-invariance. Complex forms only, and undefined when the
//!   pair is collinear (sin θ ≈ 0).

use crate::error::{Error, Result};
use crate::gram::GramForm;
use crate::scalar::{principal_arg, Scalar, Vector};

/// Which of the five angle definitions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AngleKind {
    Euclidean,
    ComplexCos,
    Hermitian,
    Pseudo,
    Kahler,
}

impl AngleKind {
    pub const ALL: [AngleKind; 5] = [
        AngleKind::Euclidean,
        AngleKind::ComplexCos,
        AngleKind::Hermitian,
        AngleKind::Pseudo,
        AngleKind::Kahler,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AngleKind::Euclidean => "euclidean",
            AngleKind::ComplexCos => "complex-cos",
            AngleKind::Hermitian => "hermitian",
            AngleKind::Pseudo => "pseudo",
            AngleKind::Kahler => "kahler",
        }
    }
}

/// Result of an angle computation.
///
/// `theta` is present for the kinds that produce a real angle (`Euclidean`,
/// `Hermitian`, `Kahler`) and satisfies cos(theta) = `cos_value` there.
/// `cos_value` is complex only for `ComplexCos`; for `Pseudo` it holds the
/// modulus |cos θ_C|, so that `(cos_value, pseudo_arg)` is the polar form of
/// the complex cosine.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleValue {
    pub kind: AngleKind,
    pub theta: Option<f64>,
    pub cos_value: Scalar,
    pub pseudo_arg: Option<f64>,
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(-1.0, 1.0)
}

impl GramForm {
    /// Evaluates the `kind` angle between `x` and `y` under this form.
    ///
    /// Zero vectors are rejected (`ZeroVectorAngle`): no unique angle exists
    /// for them. `Kahler` additionally requires a complex field and a
    /// non-collinear pair; `Pseudo` requires a nonzero inner product.
    pub fn angle(&self, x: &Vector, y: &Vector, kind: AngleKind) -> Result<AngleValue> {
        if self.is_zero_vector(x)? || self.is_zero_vector(y)? {
            return Err(Error::ZeroVectorAngle);
        }
        let ip = self.inner(x, y)?;
        let scale = self.norm(x)? * self.norm(y)?;

        match kind {
            AngleKind::Euclidean => {
                let c = clamp_unit(ip.re / scale);
                Ok(AngleValue {
                    kind,
                    theta: Some(c.acos()),
                    cos_value: Scalar::new(c, 0.0),
                    pseudo_arg: None,
                })
            }
            AngleKind::ComplexCos => Ok(AngleValue {
                kind,
                theta: None,
                cos_value: ip / Scalar::new(scale, 0.0),
                pseudo_arg: None,
            }),
            AngleKind::Hermitian => {
                let c = (ip.norm() / scale).min(1.0);
                Ok(AngleValue {
                    kind,
                    theta: Some(c.acos()),
                    cos_value: Scalar::new(c, 0.0),
                    pseudo_arg: None,
                })
            }
            AngleKind::Pseudo => {
                if ip.norm() <= self.tolerances().zero * scale {
                    return Err(Error::ZeroInnerProductArg);
                }
                Ok(AngleValue {
                    kind,
                    theta: None,
                    cos_value: Scalar::new((ip.norm() / scale).min(1.0), 0.0),
                    pseudo_arg: Some(principal_arg(ip)),
                })
            }
            AngleKind::Kahler => {
                if self.field().is_real() {
                    return Err(Error::KindRequiresComplex);
                }
                let ce = clamp_unit(ip.re / scale);
                let sin_theta = ce.acos().sin();
                if sin_theta <= self.tolerances().kahler {
                    return Err(Error::KahlerDegenerate { sin_theta });
                }
                let ix = x * Scalar::i();
                let k = clamp_unit(self.inner(&ix, y)?.re / (scale * sin_theta));
                Ok(AngleValue {
                    kind,
                    theta: Some(k.acos()),
                    cos_value: Scalar::new(k, 0.0),
                    pseudo_arg: None,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{complex_vector, real_matrix, real_vector, ScalarField};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c1() -> GramForm {
        GramForm::standard(ScalarField::Complex, 1)
    }

    fn sheared_form() -> GramForm {
        GramForm::new(
            ScalarField::Real,
            real_matrix(&[&[1.0, -0.5], &[-0.5, 0.5]]),
        )
        .unwrap()
    }

    #[test]
    fn one_and_i_are_perpendicular_but_not_orthogonal() {
        let g = c1();
        let one = complex_vector(&[(1.0, 0.0)]);
        let i = complex_vector(&[(0.0, 1.0)]);
        let a = g.angle(&one, &i, AngleKind::Euclidean).unwrap();
        assert_abs_diff_eq!(a.theta.unwrap(), FRAC_PI_2, epsilon = 1e-15);
        // even though ⟨1, ι⟩ = −ι ≠ 0
        assert_abs_diff_eq!(g.inner(&one, &i).unwrap().norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn hermitian_angle_of_one_and_i_is_zero() {
        // |⟨1, ι⟩| = 1 = ‖1‖‖ι‖, so the Hermitian angle vanishes.
        let g = c1();
        let one = complex_vector(&[(1.0, 0.0)]);
        let i = complex_vector(&[(0.0, 1.0)]);
        let a = g.angle(&one, &i, AngleKind::Hermitian).unwrap();
        assert_abs_diff_eq!(a.theta.unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.cos_value.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn sheared_form_angle_is_pi_over_4() {
        let g = sheared_form();
        let e1 = real_vector(&[1.0, 0.0]);
        let ones = real_vector(&[1.0, 1.0]);
        let a = g.angle(&e1, &ones, AngleKind::Euclidean).unwrap();
        assert_abs_diff_eq!(a.theta.unwrap(), FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(a.cos_value.re, 1.0 / 2.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn antipodal_pair_has_angle_pi() {
        let g = GramForm::standard(ScalarField::Real, 2);
        let e1 = real_vector(&[1.0, 0.0]);
        let m = real_vector(&[-1.0, 0.0]);
        let a = g.angle(&e1, &m, AngleKind::Euclidean).unwrap();
        assert_abs_diff_eq!(a.theta.unwrap(), PI, epsilon = 1e-15);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let g = GramForm::standard(ScalarField::Real, 2);
        let z = real_vector(&[0.0, 0.0]);
        let y = real_vector(&[1.0, 2.0]);
        assert_eq!(
            g.angle(&z, &y, AngleKind::Euclidean).unwrap_err(),
            Error::ZeroVectorAngle
        );
    }

    #[test]
    fn pseudo_angle_on_real_form_is_zero_or_pi() {
        let g = GramForm::standard(ScalarField::Real, 2);
        let e1 = real_vector(&[1.0, 0.0]);
        let y = real_vector(&[2.0, 1.0]);
        let m = real_vector(&[-2.0, 1.0]);
        assert_eq!(
            g.angle(&e1, &y, AngleKind::Pseudo).unwrap().pseudo_arg,
            Some(0.0)
        );
        assert_eq!(
            g.angle(&e1, &m, AngleKind::Pseudo).unwrap().pseudo_arg,
            Some(PI)
        );
        // orthogonal pair: Arg(0) undefined
        let e2 = real_vector(&[0.0, 1.0]);
        assert_eq!(
            g.angle(&e1, &e2, AngleKind::Pseudo).unwrap_err(),
            Error::ZeroInnerProductArg
        );
    }

    #[test]
    fn pseudo_angle_matches_arg_of_complex_cosine() {
        let g = GramForm::standard(ScalarField::Complex, 2);
        let x = complex_vector(&[(1.0, 0.5), (0.0, -1.0)]);
        let y = complex_vector(&[(0.5, 0.0), (1.0, 1.0)]);
        let p = g.angle(&x, &y, AngleKind::Pseudo).unwrap();
        let c = g.angle(&x, &y, AngleKind::ComplexCos).unwrap();
        assert_abs_diff_eq!(
            p.pseudo_arg.unwrap(),
            c.cos_value.im.atan2(c.cos_value.re),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(p.cos_value.re, c.cos_value.norm(), epsilon = 1e-14);
    }

    #[test]
    fn kahler_rejects_real_field_and_collinear_pairs() {
        let g = GramForm::standard(ScalarField::Real, 2);
        let e1 = real_vector(&[1.0, 0.0]);
        let e2 = real_vector(&[0.0, 1.0]);
        assert_eq!(
            g.angle(&e1, &e2, AngleKind::Kahler).unwrap_err(),
            Error::KindRequiresComplex
        );

        // norms 5 and 10 are exact, so the collinear pair is detected
        let gc = GramForm::standard(ScalarField::Complex, 2);
        let x = complex_vector(&[(3.0, 0.0), (4.0, 0.0)]);
        let x2 = complex_vector(&[(6.0, 0.0), (8.0, 0.0)]);
        assert!(matches!(
            gc.angle(&x, &x2, AngleKind::Kahler).unwrap_err(),
            Error::KahlerDegenerate { .. }
        ));
    }

    #[test]
    fn kahler_on_an_invariant_plane_has_unit_cosine() {
        // y = (a + bι)x spans an ι-invariant plane with x.
        let g = GramForm::standard(ScalarField::Complex, 2);
        let x = complex_vector(&[(1.0, 0.0), (0.0, 1.0)]);
        let y = x.clone() * Scalar::new(0.6, 0.8);
        let a = g.angle(&x, &y, AngleKind::Kahler).unwrap();
        assert_abs_diff_eq!(a.cos_value.re.abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn theta_is_consistent_with_cos_value() {
        let g = sheared_form();
        let x = real_vector(&[2.0, 1.0]);
        let y = real_vector(&[-1.0, 3.0]);
        for kind in [AngleKind::Euclidean, AngleKind::Hermitian] {
            let a = g.angle(&x, &y, kind).unwrap();
            assert_abs_diff_eq!(a.theta.unwrap().cos(), a.cos_value.re, epsilon = 1e-12);
        }
    }
}
