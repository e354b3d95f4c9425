//! Conformality of two inner products, with explicit witnesses.
//!
//! Two forms are conformal when one is a positive multiple of the other; in
//! that case they define the same angles everywhere, and conversely agreeing
//! on any single angle θ₀ ∈ (0, π) — or on orthogonality — already forces
//! conformality. This module decides the question at the matrix level and,
//! whenever the answer is "not conformal", synthesizes a concrete vector
//! pair on which the two forms visibly disagree.
//!
//! The machinery is Cholesky whitening: with G₁ = LLᴴ, the Hermitian matrix
//! M = L⁻¹G₂L⁻ᴴ has constant spectrum exactly when the forms are conformal.
//! Eigenvectors of M map back to pairs that are orthogonal under both forms
//! with known norm ratios, which is precisely the raw material the rigidity
//! arguments manipulate: if u, v are such a pair with distinct eigenvalues
//! λ₁ ≠ λ₂, then x = u + v and y = u − v are orthogonal under form 1 while
//! ⟨x, y⟩₂ = λ₁ − λ₂ ≠ 0.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::linalg::SymmetricEigen;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::angle::AngleKind;
use crate::error::{Error, Result};
use crate::gram::GramForm;
use crate::sample::random_vector;
use crate::scalar::{Scalar, Vector};

/// Grid resolution of the fixed-angle witness scan.
pub const DEFAULT_SCAN_STEPS: usize = 720;

/// Fixed angles probed by default in [`equivalence_suite`].
pub fn default_theta0_probes() -> Vec<f64> {
    vec![PI / 6.0, PI / 4.0, PI / 3.0, 2.0 * PI / 3.0]
}

/// Outcome of a conformality decision.
///
/// Exactly one of `factor` and `witness` is present: the recovered positive
/// factor with G₂ ≈ factor·G₁ when conformal, a separating pair otherwise.
/// `residual` is always ‖G₂ − cG₁‖_F / ‖G₁‖_F at the least-squares c.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalityVerdict {
    pub conformal: bool,
    pub factor: Option<f64>,
    pub residual: f64,
    pub witness: Option<WitnessPair>,
}

/// What a witness pair separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Orthogonal under one form, visibly non-orthogonal under the other.
    OrthogonalityMismatch,
    /// At angle θ₀ under form 1, at a different angle under form 2.
    FixedAngleMismatch,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::OrthogonalityMismatch => "orthogonality-mismatch",
            WitnessKind::FixedAngleMismatch => "fixed-angle-mismatch",
        }
    }
}

/// Two concrete vectors on which the forms disagree, together with the
/// Euclidean angle they enclose under each form.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessPair {
    pub x: Vector,
    pub y: Vector,
    pub kind: WitnessKind,
    /// The probed fixed angle; present for `FixedAngleMismatch` only.
    pub theta0: Option<f64>,
    pub angle_in_1: f64,
    pub angle_in_2: f64,
}

/// The four unit vectors z, w, z̄, w̄ built over a G₁-orthogonal pair, each
/// making the angle θ₀ with its axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FourVectorFrame {
    pub z: Vector,
    pub w: Vector,
    pub zbar: Vector,
    pub wbar: Vector,
}

/// Result of a fixed-angle agreement check.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedAngleCheck {
    pub same: bool,
    pub witness: Option<WitnessPair>,
}

/// Whitened-spectrum analysis shared by the decision procedures.
struct Analysis {
    factor: f64,
    residual: f64,
    lam_lo: f64,
    lam_hi: f64,
    conformal: bool,
    /// Back-mapped eigenvectors for the extreme eigenvalues. G₁-orthonormal
    /// and G₂-orthogonal, with ‖u_hi‖₂² = λ_hi and ‖u_lo‖₂² = λ_lo.
    u_hi: Vector,
    u_lo: Vector,
}

fn phase_canonicalize(v: &mut Vector) {
    let mut best = 0usize;
    let mut best_mag = 0.0f64;
    for (k, z) in v.iter().enumerate() {
        let m = z.norm();
        if m > best_mag {
            best_mag = m;
            best = k;
        }
    }
    if best_mag > 0.0 {
        let phase = v[best] / Scalar::new(best_mag, 0.0);
        let adjust = phase.conj();
        for z in v.iter_mut() {
            *z *= adjust;
        }
    }
}

fn analyze(g1: &GramForm, g2: &GramForm) -> Result<Analysis> {
    g1.check_compatible(g2)?;
    let (factor, residual) = best_factor(g1, g2)?;

    let l = g1.cholesky_lower();
    let a = l
        .solve_lower_triangular(g2.matrix())
        .ok_or_else(|| Error::Internal("singular Cholesky factor".into()))?;
    let m = l
        .solve_lower_triangular(&a.adjoint())
        .ok_or_else(|| Error::Internal("singular Cholesky factor".into()))?
        .adjoint();
    let m = (&m + m.adjoint()) * Scalar::new(0.5, 0.0);

    let eig = SymmetricEigen::new(m);
    let n = g1.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let (ilo, ihi) = (order[0], order[n - 1]);
    let (lam_lo, lam_hi) = (eig.eigenvalues[ilo], eig.eigenvalues[ihi]);
    if lam_hi <= 0.0 {
        return Err(Error::Internal(
            "whitened matrix has no positive eigenvalue".into(),
        ));
    }
    let spread_rel = (lam_hi - lam_lo) / lam_hi;

    let tol_conf = g1.tolerances().conf;
    // The spectrum of M is the complete conformality invariant, so a tight
    // spectrum decides "conformal" even when the raw Frobenius residual is
    // marginally above threshold.
    let conformal = (factor > 0.0 && residual <= tol_conf) || spread_rel <= tol_conf;

    let back = |col: usize| -> Result<Vector> {
        let ep: Vector = eig.eigenvectors.column(col).into_owned();
        let mut u = l
            .ad_solve_lower_triangular(&ep)
            .ok_or_else(|| Error::Internal("singular Cholesky factor".into()))?;
        phase_canonicalize(&mut u);
        Ok(u)
    };
    let u_hi = back(ihi)?;
    let u_lo = back(ilo)?;

    Ok(Analysis {
        factor,
        residual,
        lam_lo,
        lam_hi,
        conformal,
        u_hi,
        u_lo,
    })
}

/// Least-squares proportionality factor and its relative residual.
///
/// Returns `(c, r)` with c = Re⟨G₁, G₂⟩_F / ‖G₁‖_F² and
/// r = ‖G₂ − cG₁‖_F / ‖G₁‖_F. For positive definite inputs c is always
/// positive.
pub fn best_factor(g1: &GramForm, g2: &GramForm) -> Result<(f64, f64)> {
    g1.check_compatible(g2)?;
    let m1 = g1.matrix();
    let m2 = g2.matrix();
    let mut dot = 0.0f64;
    let mut n1sq = 0.0f64;
    for (a, b) in m1.iter().zip(m2.iter()) {
        dot += (a.conj() * b).re;
        n1sq += a.norm_sqr();
    }
    let c = dot / n1sq;
    let residual = (m2 - m1 * Scalar::new(c, 0.0)).norm() / n1sq.sqrt();
    Ok((c, residual))
}

/// Decides whether g₂ = c·g₁ for some c > 0, producing either the factor or
/// an orthogonality witness.
pub fn check_conformal(g1: &GramForm, g2: &GramForm) -> Result<ConformalityVerdict> {
    let analysis = analyze(g1, g2)?;
    if analysis.conformal {
        Ok(ConformalityVerdict {
            conformal: true,
            factor: Some(analysis.factor),
            residual: analysis.residual,
            witness: None,
        })
    } else {
        let witness = orthogonality_witness_from(g1, g2, &analysis)?;
        Ok(ConformalityVerdict {
            conformal: false,
            factor: None,
            residual: analysis.residual,
            witness: Some(witness),
        })
    }
}

fn orthogonality_witness_from(
    g1: &GramForm,
    g2: &GramForm,
    analysis: &Analysis,
) -> Result<WitnessPair> {
    let x = &analysis.u_hi + &analysis.u_lo;
    let y = &analysis.u_hi - &analysis.u_lo;
    let angle_in_1 = g1
        .angle(&x, &y, AngleKind::Euclidean)?
        .theta
        .expect("euclidean angle has a real value");
    let angle_in_2 = g2
        .angle(&x, &y, AngleKind::Euclidean)?
        .theta
        .expect("euclidean angle has a real value");
    Ok(WitnessPair {
        x,
        y,
        kind: WitnessKind::OrthogonalityMismatch,
        theta0: None,
        angle_in_1,
        angle_in_2,
    })
}

/// Produces a pair orthogonal under `g1` but not under `g2` (real part),
/// failing with `FormsAreConformal` when no such pair exists.
///
/// The pair is x = u + v, y = u − v over back-mapped eigenvectors u, v of
/// the whitened matrix at the extreme eigenvalues, so ⟨x,y⟩₁ = 0 while
/// ⟨x,y⟩₂ = λ_max − λ_min.
pub fn find_orthogonality_witness(g1: &GramForm, g2: &GramForm) -> Result<WitnessPair> {
    if g1.dim() < 2 {
        return Err(Error::DimensionTooSmall { dim: g1.dim() });
    }
    let analysis = analyze(g1, g2)?;
    if analysis.conformal {
        return Err(Error::FormsAreConformal);
    }
    orthogonality_witness_from(g1, g2, &analysis)
}

/// Builds the four-vector frame over a G₁-orthogonal pair (x, y):
///
/// ```text
/// z  =  cos θ₀ x̂ + sin θ₀ ŷ     w  =  sin θ₀ x̂ + cos θ₀ ŷ
/// z̄  =  cos θ₀ x̂ − sin θ₀ ŷ     w̄  = −sin θ₀ x̂ + cos θ₀ ŷ
/// ```
///
/// with x̂, ŷ the G₁-normalizations. All four are G₁-unit, z and z̄ make the
/// angle θ₀ with x̂, and w and w̄ make the angle θ₀ with ŷ. Real field only;
/// θ₀ must lie strictly inside (0, π/2).
pub fn four_vector_frame(
    g1: &GramForm,
    x: &Vector,
    y: &Vector,
    theta0: f64,
) -> Result<FourVectorFrame> {
    if !g1.field().is_real() {
        return Err(Error::RequiresRealField);
    }
    if !(theta0 > 0.0 && theta0 < FRAC_PI_2) {
        return Err(Error::ThetaOutOfRange { theta0 });
    }
    if g1.is_zero_vector(x)? || g1.is_zero_vector(y)? {
        return Err(Error::ZeroVector);
    }
    let nx = g1.norm(x)?;
    let ny = g1.norm(y)?;
    let ip = g1.inner(x, y)?;
    if ip.norm() > g1.tolerances().num * nx * ny {
        return Err(Error::NotOrthogonalIn1 { inner: ip.norm() });
    }
    let xh = x / Scalar::new(nx, 0.0);
    let yh = y / Scalar::new(ny, 0.0);
    let (cos0, sin0) = (theta0.cos(), theta0.sin());
    let c = Scalar::new(cos0, 0.0);
    let s = Scalar::new(sin0, 0.0);
    Ok(FourVectorFrame {
        z: &xh * c + &yh * s,
        w: &xh * s + &yh * c,
        zbar: &xh * c - &yh * s,
        wbar: &yh * c - &xh * s,
    })
}

/// Checks whether the two forms define the same θ₀ angle.
///
/// By the rigidity theorems this holds exactly when the forms are conformal,
/// for every θ₀ ∈ (0, π); the boolean is therefore the conformality
/// decision. When it is false, a concrete pair at angle θ₀ under form 1 but
/// not under form 2 is found by scanning `scan_steps` directions of the
/// plane spanned by the extreme whitened eigenvectors; θ₀ ∈ (π/2, π) is
/// first reduced to π − θ₀ and the witness recovered by negating one vector.
pub fn same_fixed_angle(
    g1: &GramForm,
    g2: &GramForm,
    theta0: f64,
    scan_steps: usize,
) -> Result<FixedAngleCheck> {
    if !(theta0.is_finite() && theta0 > 0.0 && theta0 < PI) {
        return Err(Error::ThetaOutOfRange { theta0 });
    }
    let analysis = analyze(g1, g2)?;
    if analysis.conformal {
        return Ok(FixedAngleCheck {
            same: true,
            witness: None,
        });
    }

    let reduce = theta0 > FRAC_PI_2;
    let target = if reduce { PI - theta0 } else { theta0 };
    let steps = scan_steps.max(1);

    let (lam_hi, lam_lo) = (analysis.lam_hi, analysis.lam_lo);
    let norm2_sq = |t: f64| lam_hi * t.cos() * t.cos() + lam_lo * t.sin() * t.sin();
    let angle2 = |t: f64, s: f64| {
        let ip = lam_hi * t.cos() * s.cos() + lam_lo * t.sin() * s.sin();
        let c = ip / (norm2_sq(t) * norm2_sq(s)).sqrt();
        c.clamp(-1.0, 1.0).acos()
    };

    let mut best = (0.0f64, 0.0f64, -1.0f64);
    for k in 0..steps {
        let t = k as f64 * PI / steps as f64;
        for s in [t + target, t - target] {
            let dev = (angle2(t, s) - target).abs();
            if dev > best.2 {
                best = (t, s, dev);
            }
        }
    }

    let plane = |t: f64| &analysis.u_hi * Scalar::new(t.cos(), 0.0)
        + &analysis.u_lo * Scalar::new(t.sin(), 0.0);
    let mut x = plane(best.0);
    let y = plane(best.1);
    if reduce {
        x = -x;
    }
    let angle_in_1 = g1
        .angle(&x, &y, AngleKind::Euclidean)?
        .theta
        .expect("euclidean angle has a real value");
    let angle_in_2 = g2
        .angle(&x, &y, AngleKind::Euclidean)?
        .theta
        .expect("euclidean angle has a real value");
    Ok(FixedAngleCheck {
        same: false,
        witness: Some(WitnessPair {
            x,
            y,
            kind: WitnessKind::FixedAngleMismatch,
            theta0: Some(theta0),
            angle_in_1,
            angle_in_2,
        }),
    })
}

/// Projects `y` G₁-orthogonally against `x` and evaluates the remainder
/// against `x` under g₂.
///
/// With z = y − (⟨y,x⟩₁ / ‖x‖₁²)·x, the return value is ⟨z, x⟩₂; it vanishes
/// (to tolerance) whenever the forms are conformal, while ⟨z, x⟩₁ = 0 holds
/// identically.
pub fn projection_residual(
    g1: &GramForm,
    g2: &GramForm,
    x: &Vector,
    y: &Vector,
) -> Result<Scalar> {
    g1.check_compatible(g2)?;
    if g1.is_zero_vector(x)? {
        return Err(Error::ZeroVector);
    }
    let nx_sq = g1.norm(x)?.powi(2);
    let coeff = g1.inner(y, x)? / Scalar::new(nx_sq, 0.0);
    let z = y - x * coeff;
    g2.inner(&z, x)
}

/// One line of an [`EquivalenceReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceItem {
    pub name: &'static str,
    pub pass: bool,
    pub max_deviation: f64,
}

/// Outcome of the norm-coincidence corollary check: when the forms are
/// conformal and some sampled vector has equal norms under both, the factor
/// must be 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCoincidence {
    pub vector_found: bool,
    pub factor_is_one: Option<bool>,
    pub consistent: bool,
}

/// Randomized evaluation of every equivalence item, plus the coincidence
/// corollary.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub conformal: bool,
    pub factor: f64,
    pub residual: f64,
    pub items: Vec<EquivalenceItem>,
    pub all_agree: bool,
    pub norm_coincidence: NormCoincidence,
}

/// Evaluates the equivalent characterizations of conformality on randomized
/// samples and reports per-item pass/fail.
///
/// Items: (1) matrix proportionality, (2) constancy of the norm ratio,
/// (3) equality of Euclidean angles, (4) agreement on the π/2 angle,
/// (5) agreement of orthogonality relations (complex field only, where it
/// differs from (4)), (6) agreement on each fixed angle in `theta0_probes`.
/// For a non-conformal pair the samples include the extreme whitened
/// eigenvectors, so every item fails deterministically rather than only
/// with high probability. Items use the acceptance threshold 100·tol_conf;
/// pairs whose residual sits inside that gray band may classify
/// inconsistently across items, which the `all_agree` flag then reports.
pub fn equivalence_suite(
    g1: &GramForm,
    g2: &GramForm,
    trials: usize,
    seed: u64,
    theta0_probes: &[f64],
) -> Result<EquivalenceReport> {
    for &t in theta0_probes {
        if !(t.is_finite() && t > 0.0 && t < PI) {
            return Err(Error::ThetaOutOfRange { theta0: t });
        }
    }
    let analysis = analyze(g1, g2)?;
    let n = g1.dim();
    let field = g1.field();
    let item_tol = 100.0 * g1.tolerances().conf;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut vectors: Vec<Vector> = Vec::with_capacity(trials + 2);
    for _ in 0..trials {
        vectors.push(random_vector(&mut rng, field, n));
    }
    let mut pairs: Vec<(Vector, Vector)> = Vec::with_capacity(trials + 1);
    for _ in 0..trials {
        pairs.push((
            random_vector(&mut rng, field, n),
            random_vector(&mut rng, field, n),
        ));
    }
    if n >= 2 {
        vectors.push(analysis.u_hi.clone());
        vectors.push(analysis.u_lo.clone());
        pairs.push((
            &analysis.u_hi + &analysis.u_lo,
            &analysis.u_hi - &analysis.u_lo,
        ));
    }

    // (2) norm-ratio constancy
    let mut ratios: Vec<f64> = Vec::with_capacity(vectors.len());
    for v in &vectors {
        if g1.is_zero_vector(v)? || g2.is_zero_vector(v)? {
            continue;
        }
        ratios.push(g2.norm(v)? / g1.norm(v)?);
    }
    let rmin = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let rmax = ratios.iter().cloned().fold(0.0f64, f64::max);
    let ratio_spread = if ratios.is_empty() {
        0.0
    } else {
        (rmax - rmin) / rmin
    };

    // (3) Euclidean-angle equality on sampled pairs
    let mut angle_dev = 0.0f64;
    for (a, b) in &pairs {
        if g1.is_zero_vector(a)? || g1.is_zero_vector(b)? {
            continue;
        }
        let t1 = g1.angle(a, b, AngleKind::Euclidean)?.theta.unwrap();
        let t2 = g2.angle(a, b, AngleKind::Euclidean)?.theta.unwrap();
        angle_dev = angle_dev.max((t1 - t2).abs());
    }

    // real-part Gram-Schmidt of b against a under `form`
    let orthogonalize_re = |form: &GramForm, a: &Vector, b: &Vector| -> Result<Option<Vector>> {
        let na = form.norm(a)?;
        if na == 0.0 {
            return Ok(None);
        }
        let r = form.inner(b, a)?.re / (na * na);
        let z = b - a * Scalar::new(r, 0.0);
        if form.norm(&z)? <= 1e-8 * form.norm(b)? {
            return Ok(None);
        }
        Ok(Some(z))
    };

    // (4) π/2-angle agreement, probed in both directions
    let mut right_angle_dev = 0.0f64;
    for (a, b) in &pairs {
        for (src, dst) in [(g1, g2), (g2, g1)] {
            if let Some(z) = orthogonalize_re(src, a, b)? {
                let t = dst.angle(a, &z, AngleKind::Euclidean)?.theta.unwrap();
                right_angle_dev = right_angle_dev.max((t - FRAC_PI_2).abs());
            }
        }
    }

    // (5) orthogonality-relation agreement (complex only): full projections
    let mut orth_dev = 0.0f64;
    if !field.is_real() {
        for (a, b) in &pairs {
            for (src, dst) in [(g1, g2), (g2, g1)] {
                let na = src.norm(a)?;
                if na == 0.0 {
                    continue;
                }
                let coeff = src.inner(b, a)? / Scalar::new(na * na, 0.0);
                let z = b - a * coeff;
                let nz = dst.norm(&z)?;
                let nax = dst.norm(a)?;
                if nz == 0.0 || nax == 0.0 {
                    continue;
                }
                orth_dev = orth_dev.max(dst.inner(&z, a)?.norm() / (nz * nax));
            }
        }
    }

    // (6) fixed-angle agreement for each probe
    let mut theta0_dev = 0.0f64;
    for &theta0 in theta0_probes {
        let (c0, s0) = (Scalar::new(theta0.cos(), 0.0), Scalar::new(theta0.sin(), 0.0));
        for (a, b) in &pairs {
            for (src, dst) in [(g1, g2), (g2, g1)] {
                if src.is_zero_vector(a)? {
                    continue;
                }
                if let Some(z) = orthogonalize_re(src, a, b)? {
                    let ah = a / Scalar::new(src.norm(a)?, 0.0);
                    let zh = &z / Scalar::new(src.norm(&z)?, 0.0);
                    let q = &ah * c0 + &zh * s0;
                    let t = dst.angle(&ah, &q, AngleKind::Euclidean)?.theta.unwrap();
                    theta0_dev = theta0_dev.max((t - theta0).abs());
                }
            }
        }
        if n >= 2 {
            let q = &analysis.u_hi * c0 + &analysis.u_lo * s0;
            let t = g2
                .angle(&analysis.u_hi, &q, AngleKind::Euclidean)?
                .theta
                .unwrap();
            theta0_dev = theta0_dev.max((t - theta0).abs());
        }
    }

    let mut items = vec![
        EquivalenceItem {
            name: "matrix-proportionality",
            pass: analysis.conformal,
            max_deviation: analysis.residual,
        },
        EquivalenceItem {
            name: "norm-ratio-constant",
            pass: ratio_spread <= item_tol,
            max_deviation: ratio_spread,
        },
        EquivalenceItem {
            name: "angle-equality",
            pass: angle_dev <= item_tol,
            max_deviation: angle_dev,
        },
        EquivalenceItem {
            name: "right-angle-agreement",
            pass: right_angle_dev <= item_tol,
            max_deviation: right_angle_dev,
        },
    ];
    if !field.is_real() {
        items.push(EquivalenceItem {
            name: "orthogonality-agreement",
            pass: orth_dev <= item_tol,
            max_deviation: orth_dev,
        });
    }
    items.push(EquivalenceItem {
        name: "theta0-angle-agreement",
        pass: theta0_dev <= item_tol,
        max_deviation: theta0_dev,
    });

    let all_agree =
        items.iter().all(|i| i.pass) || items.iter().all(|i| !i.pass);

    let vector_found = ratios.iter().any(|r| (r - 1.0).abs() <= item_tol);
    let factor_is_one = if analysis.conformal && vector_found {
        Some((analysis.factor - 1.0).abs() <= 4.0 * item_tol)
    } else {
        None
    };
    let consistent = !matches!(factor_is_one, Some(false));

    Ok(EquivalenceReport {
        conformal: analysis.conformal,
        factor: analysis.factor,
        residual: analysis.residual,
        items,
        all_agree,
        norm_coincidence: NormCoincidence {
            vector_found,
            factor_is_one,
            consistent,
        },
    })
}
