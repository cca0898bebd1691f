//! Projective normalization of a convex domain at a boundary point.
//!
//! Starting from a domain `U`, an interior point `o` and a boundary point
//! `p`, the composition of a rigid motion and three elementary maps
//! produces a domain `Û` in which `p` sits at the origin, the boundary is
//! tangent to the first axis there with `f̂″(0) = 1/2`, the segment from `p`
//! through `o` lies on the second axis, and the far end of that chord has a
//! horizontal tangent.

mod map;

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix3;
use serde::Serialize;

pub use map::ProjectiveMap2;

use crate::error::{Error, Result};
use crate::geometry::ConvexDomain2;
use crate::Vec2;

/// Tolerance of the `f̂″(0) = 1/2` consistency check.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// Affine shear `x̃₁ = x₁ − tanα·x₂`, `x̃₂ = x₂/cosα`.
pub fn step1_shear(alpha: f64) -> Result<ProjectiveMap2> {
    if !(alpha.abs() < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!(
            "shear angle {alpha} outside (-pi/2, pi/2)"
        )));
    }
    ProjectiveMap2::new(Matrix3::new(
        1.0,
        -alpha.tan(),
        0.0,
        0.0,
        1.0 / alpha.cos(),
        0.0,
        0.0,
        0.0,
        1.0,
    ))
}

/// `x̄ = H·x̃ / (H − tanβ·x̃₁)`.
pub fn step2_projective(tan_beta: f64, h: f64) -> Result<ProjectiveMap2> {
    if !(h > 0.0 && h.is_finite()) || !tan_beta.is_finite() {
        return Err(Error::InvalidInput(format!(
            "chord length {h} and slope {tan_beta} must be finite with H > 0"
        )));
    }
    ProjectiveMap2::new(Matrix3::new(
        h, 0.0, 0.0, 0.0, h, 0.0, -tan_beta, 0.0, h,
    ))
}

/// `x̂₁ = x̄₁/ω_u`, `x̂₂ = x̄₂/(2ω_u²k̄)`.
pub fn step3_scale(omega_u: f64, kbar0: f64) -> Result<ProjectiveMap2> {
    if !(omega_u > 0.0 && kbar0 > 0.0) {
        return Err(Error::InvalidInput(format!(
            "scale parameters must be positive: omega_u = {omega_u}, k = {kbar0}"
        )));
    }
    ProjectiveMap2::new(Matrix3::from_diagonal(&nalgebra::Vector3::new(
        1.0 / omega_u,
        1.0 / (2.0 * omega_u * omega_u * kbar0),
        1.0,
    )))
}

/// Shift of the boundary third derivative at the origin produced by the
/// projective step: `f3 − tanβ·k0/H`.
///
/// Expanding the map to third order gives `f3 − 3·tanβ·k0/H` instead; the
/// normalization report carries both this value and the measured one.
pub fn third_derivative_shift(f3: f64, k0: f64, tan_beta: f64, h: f64) -> f64 {
    f3 - tan_beta * k0 / h
}

pub fn apply_map(map: &ProjectiveMap2, x: Vec2) -> Result<Vec2> {
    map.apply(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizationReport {
    pub alpha: f64,
    pub tan_beta: f64,
    /// `sqrt(1/(k̃²ω̃₀²) − 1)` for the sheared domain.
    pub tan_beta_bound: f64,
    pub omega_u: f64,
    /// Length of the chord through `o` and `p`.
    pub h: f64,
    /// Curvature at the origin after the shear.
    pub k_tilde0: f64,
    /// Curvature at the origin after the projective step.
    pub kbar0: f64,
    pub f3_tilde: f64,
    /// Third derivative at the origin after the projective step, measured.
    pub f3_bar: f64,
    /// [`third_derivative_shift`] applied to `f3_tilde`.
    pub f3_bar_shift_rule: f64,
    /// Third-order expansion `f̃‴ − 3·tanβ·k̃/H`.
    pub f3_bar_expansion: f64,
    pub f2_normalized: f64,
    pub f3_normalized: f64,
    pub f4_normalized: f64,
    pub curvature_min: f64,
    pub curvature_max: f64,
    /// Angle between the tangent at the far end of the vertical chord and
    /// the first axis.
    pub far_tangent_angle: f64,
    /// `ω̂(0) = 1/(2ω_u·k̄(0))`, the distance from the image of `o` to `p`.
    pub omega_hat0: f64,
}

/// Normalizes `domain` at the boundary point with domain angle `phi_p`,
/// using `o` as the interior point.
///
/// Returns the full map `P` (including the rigid move to the frame at `p`),
/// the normalized domain with base point `P(o)` and reference direction
/// `(0, −1)`, and the report.
pub fn normalize(
    domain: &ConvexDomain2,
    o: Vec2,
    phi_p: f64,
) -> Result<(ProjectiveMap2, ConvexDomain2, NormalizationReport)> {
    if !domain.contains(o) {
        return Err(Error::NotInterior { x: o.x, y: o.y });
    }
    let jet_p = domain.graph_jet(phi_p);
    let p = jet_p.point;
    let frame = ProjectiveMap2::rigid_frame(p, jet_p.tangent, jet_p.normal)?;
    let o_frame = frame.apply(o)?;
    let omega_u = o_frame.norm();
    let alpha = o_frame.x.atan2(o_frame.y);

    let shear = step1_shear(alpha)?.after(&frame);
    let down = -FRAC_PI_2;
    let tilde = domain.projective_image(&shear, o)?.with_reference_angle(down);
    let jet_tilde = tilde.graph_jet(0.0);
    let far = tilde.graph_jet(PI);
    let h = far.point.y;
    let tan_beta = -far.tangent.y / far.tangent.x;
    let angle = tilde.angle_cosine_bound(tilde.base_point())?;
    let tan_beta_bound = (1.0 / (angle.k_min * angle.omega0).powi(2) - 1.0).max(0.0).sqrt();

    let proj = step2_projective(tan_beta, h)?.after(&shear);
    let bar = domain.projective_image(&proj, o)?.with_reference_angle(down);
    let jet_bar = bar.graph_jet(0.0);
    let kbar0 = jet_bar.f2;

    let full = step3_scale(omega_u, kbar0)?.after(&proj);
    let hat = domain.projective_image(&full, o)?.with_reference_angle(down);
    let jet_hat = hat.graph_jet(0.0);
    let far_hat = hat.graph_jet(PI);

    let origin_err = jet_hat.point.norm().max(full.apply(p)?.norm());
    if (jet_hat.f2 - 0.5).abs() > NORMALIZATION_TOL
        || jet_hat.f1.abs() > NORMALIZATION_TOL
        || origin_err > NORMALIZATION_TOL
    {
        return Err(Error::Consistency(format!(
            "normalized boundary at the origin: point offset {origin_err:e}, f' = {:e}, f'' = {}",
            jet_hat.f1, jet_hat.f2
        )));
    }

    let report = NormalizationReport {
        alpha,
        tan_beta,
        tan_beta_bound,
        omega_u,
        h,
        k_tilde0: jet_tilde.f2,
        kbar0,
        f3_tilde: jet_tilde.f3,
        f3_bar: jet_bar.f3,
        f3_bar_shift_rule: third_derivative_shift(jet_tilde.f3, jet_tilde.f2, tan_beta, h),
        f3_bar_expansion: jet_tilde.f3 - 3.0 * tan_beta * jet_tilde.f2 / h,
        f2_normalized: jet_hat.f2,
        f3_normalized: jet_hat.f3,
        f4_normalized: jet_hat.f4,
        curvature_min: hat.stats().curvature_min,
        curvature_max: hat.stats().curvature_max,
        far_tangent_angle: far_hat.tangent.y.atan2(far_hat.tangent.x.abs()),
        omega_hat0: hat.base_point().y,
    };
    Ok((full, hat, report))
}
