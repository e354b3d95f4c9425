//! Pointwise conformality of sampled metric pairs.
//!
//! A [`MetricFieldSample`] carries a finite set of labeled points, each with
//! two real Gram forms standing in for the two metrics on that tangent
//! space. Conformality of the pair of metrics is exactly the conjunction of
//! per-point conformality, with a pointwise positive factor f(p); nothing
//! here assumes or checks smoothness of f — the per-point values are
//! reported as they come.
//!
//! Note the factor convention: f(p) is the *inner-product* ratio
//! (g₂)ₚ ≈ f(p)·(g₁)ₚ, so the corresponding norm ratio is √f(p)
//! (see [`ConformalFactorField::norm_ratios`]).

use crate::error::{Error, Result};
use crate::gram::GramForm;
use crate::rigidity::{check_conformal, same_fixed_angle, DEFAULT_SCAN_STEPS};
use crate::scalar::ScalarField;

/// A finite family of points, each carrying two real forms of the same
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricFieldSample {
    points: Vec<Vec<f64>>,
    g1_at: Vec<GramForm>,
    g2_at: Vec<GramForm>,
}

impl MetricFieldSample {
    /// Validates and assembles a sample.
    ///
    /// Requires one form pair per point, a common dimension shared by the
    /// point coordinates and all forms, real scalar fields, and pairwise
    /// distinct points.
    pub fn new(
        points: Vec<Vec<f64>>,
        g1_at: Vec<GramForm>,
        g2_at: Vec<GramForm>,
    ) -> Result<Self> {
        if g1_at.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                actual: g1_at.len(),
            });
        }
        if g2_at.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                actual: g2_at.len(),
            });
        }
        if let Some(first) = points.first() {
            let d = first.len();
            for (idx, ((p, a), b)) in points.iter().zip(&g1_at).zip(&g2_at).enumerate() {
                if p.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        actual: p.len(),
                    }
                    .at_point(idx));
                }
                if !p.iter().all(|c| c.is_finite()) {
                    return Err(Error::NonFiniteEntry { row: idx, col: 0 });
                }
                if a.field() != ScalarField::Real || b.field() != ScalarField::Real {
                    return Err(Error::FieldMismatch.at_point(idx));
                }
                if a.dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        actual: a.dim(),
                    }
                    .at_point(idx));
                }
                if b.dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        actual: b.dim(),
                    }
                    .at_point(idx));
                }
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoint { first: i, second: j });
                }
            }
        }
        Ok(MetricFieldSample {
            points,
            g1_at,
            g2_at,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn g1_at(&self) -> &[GramForm] {
        &self.g1_at
    }

    pub fn g2_at(&self) -> &[GramForm] {
        &self.g2_at
    }
}

/// Overall classification of a factor field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldVerdict {
    /// Conformal at every point with a factor constant across points.
    ConformalConstant,
    /// Conformal at every point, factor varies from point to point.
    ConformalVarying,
    /// At least one point where the forms are not conformal.
    NotConformal,
}

impl FieldVerdict {
    pub fn name(self) -> &'static str {
        match self {
            FieldVerdict::ConformalConstant => "conformal-constant",
            FieldVerdict::ConformalVarying => "conformal-varying",
            FieldVerdict::NotConformal => "not-conformal",
        }
    }
}

/// Per-point factors and residuals with the global verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalFactorField {
    /// Least-squares factor at each point, in input order.
    pub factors: Vec<f64>,
    /// Relative Frobenius residual at each point.
    pub residuals: Vec<f64>,
    /// Per-point conformality flags.
    pub conformal_at: Vec<bool>,
    pub verdict: FieldVerdict,
    /// Index of the first non-conformal point (input order), if any.
    pub failing_point: Option<usize>,
}

impl ConformalFactorField {
    /// Per-point norm ratios ‖·‖₂/‖·‖₁ = √f(p).
    pub fn norm_ratios(&self) -> Vec<f64> {
        self.factors.iter().map(|f| f.sqrt()).collect()
    }
}

/// Runs the conformality decision at every point of the sample.
///
/// All points are evaluated (the full residual table is part of the
/// report); the verdict is `NotConformal` with the first failing point when
/// any point fails, otherwise constant-vs-varying splits on whether the
/// factor spread exceeds the conformality tolerance of the first form.
pub fn pointwise_conformality(sample: &MetricFieldSample) -> Result<ConformalFactorField> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut factors = Vec::with_capacity(sample.len());
    let mut residuals = Vec::with_capacity(sample.len());
    let mut conformal_at = Vec::with_capacity(sample.len());
    let mut failing_point = None;
    for (idx, (g1, g2)) in sample.g1_at().iter().zip(sample.g2_at()).enumerate() {
        let verdict = check_conformal(g1, g2).map_err(|e| e.at_point(idx))?;
        let (c, _) = crate::rigidity::best_factor(g1, g2).map_err(|e| e.at_point(idx))?;
        factors.push(verdict.factor.unwrap_or(c));
        residuals.push(verdict.residual);
        conformal_at.push(verdict.conformal);
        if !verdict.conformal && failing_point.is_none() {
            failing_point = Some(idx);
        }
    }
    let verdict = if failing_point.is_some() {
        FieldVerdict::NotConformal
    } else {
        let fmin = factors.iter().cloned().fold(f64::INFINITY, f64::min);
        let fmax = factors.iter().cloned().fold(0.0f64, f64::max);
        if (fmax - fmin) / fmin <= sample.g1_at()[0].tolerances().conf {
            FieldVerdict::ConformalConstant
        } else {
            FieldVerdict::ConformalVarying
        }
    };
    Ok(ConformalFactorField {
        factors,
        residuals,
        conformal_at,
        verdict,
        failing_point,
    })
}

/// Per-point check that both forms define the same θ₀ angle.
///
/// The returned flags coincide with the per-point conformality map: that is
/// the content of the pointwise rigidity statement.
pub fn theta0_field_check(sample: &MetricFieldSample, theta0: f64) -> Result<Vec<bool>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    sample
        .g1_at()
        .iter()
        .zip(sample.g2_at())
        .enumerate()
        .map(|(idx, (g1, g2))| {
            same_fixed_angle(g1, g2, theta0, DEFAULT_SCAN_STEPS)
                .map(|check| check.same)
                .map_err(|e| match e {
                    Error::ThetaOutOfRange { theta0 } => Error::ThetaOutOfRange { theta0 },
                    other => other.at_point(idx),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{real_matrix, Matrix, Scalar};
    use std::f64::consts::{FRAC_PI_3, PI};

    fn identity_form() -> GramForm {
        GramForm::standard(ScalarField::Real, 2)
    }

    fn scaled_identity(c: f64) -> GramForm {
        GramForm::new(
            ScalarField::Real,
            Matrix::identity(2, 2) * Scalar::new(c, 0.0),
        )
        .unwrap()
    }

    fn line_grid(n: usize) -> Vec<Vec<f64>> {
        (0..n).map(|i| vec![i as f64, 0.0]).collect()
    }

    fn constant_sample(factor: f64, n: usize) -> MetricFieldSample {
        MetricFieldSample::new(
            line_grid(n),
            vec![identity_form(); n],
            vec![scaled_identity(factor); n],
        )
        .unwrap()
    }

    fn varying_sample() -> MetricFieldSample {
        let coords = [-1.0, -0.5, 0.0, 0.5, 1.0];
        let points: Vec<Vec<f64>> = coords.iter().map(|&p| vec![p, 0.0]).collect();
        let g1 = vec![identity_form(); coords.len()];
        let g2 = coords
            .iter()
            .map(|&p| scaled_identity(1.0 + p * p))
            .collect();
        MetricFieldSample::new(points, g1, g2).unwrap()
    }

    fn defect_sample() -> (MetricFieldSample, usize) {
        let n = 9;
        let defect_at = 4;
        let g1 = vec![identity_form(); n];
        let mut g2 = vec![identity_form(); n];
        g2[defect_at] = GramForm::new(
            ScalarField::Real,
            real_matrix(&[&[1.0, -0.5], &[-0.5, 0.5]]),
        )
        .unwrap();
        (
            MetricFieldSample::new(line_grid(n), g1, g2).unwrap(),
            defect_at,
        )
    }

    #[test]
    fn constant_field_is_conformal_constant() {
        let field = pointwise_conformality(&constant_sample(3.0, 25)).unwrap();
        assert_eq!(field.verdict, FieldVerdict::ConformalConstant);
        assert!(field.factors.iter().all(|&f| (f - 3.0).abs() < 1e-12));
        assert!(field.failing_point.is_none());
    }

    #[test]
    fn varying_field_recovers_the_formula() {
        let field = pointwise_conformality(&varying_sample()).unwrap();
        assert_eq!(field.verdict, FieldVerdict::ConformalVarying);
        let coords = [-1.0f64, -0.5, 0.0, 0.5, 1.0];
        for (f, p) in field.factors.iter().zip(coords) {
            assert!((f - (1.0 + p * p)).abs() < 1e-10);
        }
        // norm ratios are the square roots of the factors
        for (r, f) in field.norm_ratios().iter().zip(&field.factors) {
            assert!((r * r - f).abs() < 1e-12);
        }
    }

    #[test]
    fn defect_field_reports_the_failing_point() {
        let (sample, defect_at) = defect_sample();
        let field = pointwise_conformality(&sample).unwrap();
        assert_eq!(field.verdict, FieldVerdict::NotConformal);
        assert_eq!(field.failing_point, Some(defect_at));
        assert!(field.residuals[defect_at] > sample.g1_at()[0].tolerances().conf);
    }

    #[test]
    fn theta0_check_transports_the_conformality_map() {
        let (sample, defect_at) = defect_sample();
        let flags = theta0_field_check(&sample, FRAC_PI_3).unwrap();
        let field = pointwise_conformality(&sample).unwrap();
        assert_eq!(flags, field.conformal_at);
        assert!(!flags[defect_at]);
        assert!(flags.iter().filter(|f| !**f).count() == 1);
    }

    #[test]
    fn theta0_endpoints_are_rejected() {
        let sample = constant_sample(2.0, 3);
        assert!(matches!(
            theta0_field_check(&sample, PI).unwrap_err(),
            Error::ThetaOutOfRange { .. }
        ));
    }

    #[test]
    fn empty_sample_is_rejected() {
        let sample = MetricFieldSample::new(vec![], vec![], vec![]).unwrap();
        assert_eq!(
            pointwise_conformality(&sample).unwrap_err(),
            Error::EmptySample
        );
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let err = MetricFieldSample::new(
            vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            vec![identity_form(); 2],
            vec![identity_form(); 2],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicatePoint { first: 0, second: 1 });
    }

    #[test]
    fn locality_of_per_point_outputs() {
        let base = constant_sample(2.0, 5);
        let mut g2 = base.g2_at().to_vec();
        g2[2] = scaled_identity(7.0);
        let touched =
            MetricFieldSample::new(base.points().to_vec(), base.g1_at().to_vec(), g2).unwrap();
        let a = pointwise_conformality(&base).unwrap();
        let b = pointwise_conformality(&touched).unwrap();
        for i in 0..5 {
            if i != 2 {
                assert_eq!(a.factors[i], b.factors[i]);
                assert_eq!(a.residuals[i], b.residuals[i]);
                assert_eq!(a.conformal_at[i], b.conformal_at[i]);
            }
        }
        assert!((b.factors[2] - 7.0).abs() < 1e-12);
    }
}
