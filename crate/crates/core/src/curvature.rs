//! Chern–Rund covariant derivative along curves and the normal, Rund and
//! Finsler curvatures.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ConvexDomain2;
use crate::metric::{funk, hilbert_norm, metric_data};
use crate::numerics::brent;
use crate::Vec2;

/// Below this norm the arc-length acceleration counts as zero.
pub const ZERO_ACCEL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parametrization {
    Arbitrary,
    ArcLength,
}

/// Point, velocity and acceleration of a curve at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveJet {
    pub c: Vec2,
    pub c1: Vec2,
    pub c2: Vec2,
    pub parametrization: Parametrization,
}

impl CurveJet {
    pub fn new(c: Vec2, c1: Vec2, c2: Vec2) -> Self {
        CurveJet {
            c,
            c1,
            c2,
            parametrization: Parametrization::Arbitrary,
        }
    }

    /// The same curve under `t = λ·τ + μ·τ²` at `τ = 0`.
    pub fn reparametrized(&self, lambda: f64, mu: f64) -> Self {
        CurveJet {
            c: self.c,
            c1: self.c1 * lambda,
            c2: self.c2 * (lambda * lambda) + self.c1 * (2.0 * mu),
            parametrization: Parametrization::Arbitrary,
        }
    }
}

/// A vector `n` with `F(x, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalVector {
    pub n: Vec2,
}

/// Normal curvature with the sign flipped so that circles in the round
/// disk give `+coth r` for the outward normal; `raw = g_n(∇ċċ, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalCurvature {
    pub value: f64,
    pub raw: f64,
}

/// All curvature data of a curve at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvatureSet {
    pub accel: Vec2,
    pub normal: NormalVector,
    pub k_normal: NormalCurvature,
    pub k_rund: f64,
    pub k_finsler: f64,
}

/// `∇_{c′}c′ = c″ + (Θ(c, c′) − Θ(c, −c′))·c′`.
pub fn covariant_accel(domain: &ConvexDomain2, jet: &CurveJet) -> Result<Vec2> {
    if jet.c1.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let diff = funk(domain, jet.c, jet.c1)? - funk(domain, jet.c, -jet.c1)?;
    Ok(jet.c2 + jet.c1 * diff)
}

/// `∇_ċ ċ` for the arc-length reparametrization:
/// `(∇ − g_{c′}(∇, c′)/F²·c′) / F²`.
pub fn arclength_accel(domain: &ConvexDomain2, jet: &CurveJet) -> Result<Vec2> {
    let nabla = covariant_accel(domain, jet)?;
    let (f, _, g) = metric_data(domain, jet.c, jet.c1)?;
    let f2 = f * f;
    Ok((nabla - jet.c1 * (g.bilinear(nabla, jet.c1) / f2)) / f2)
}

/// `F(c, ∇ċċ)`, or zero along geodesics.
pub fn rund_curvature(domain: &ConvexDomain2, jet: &CurveJet) -> Result<f64> {
    rund_from_accel(domain, jet.c, arclength_accel(domain, jet)?)
}

fn rund_from_accel(domain: &ConvexDomain2, c: Vec2, accel: Vec2) -> Result<f64> {
    if accel.norm() < ZERO_ACCEL {
        return Ok(0.0);
    }
    hilbert_norm(domain, c, accel)
}

/// `sqrt(g_ċ(∇ċċ, ∇ċċ))`.
pub fn finsler_curvature(domain: &ConvexDomain2, jet: &CurveJet) -> Result<f64> {
    let a = arclength_accel(domain, jet)?;
    let g = metric_data(domain, jet.c, jet.c1)?.2;
    Ok(g.bilinear(a, a).max(0.0).sqrt())
}

/// Unit vector `n` with `g_n(y, n) = 0`.
///
/// Of the two solutions, returns the one pointing away from `center` when
/// given, otherwise the one with `(y, n)` positively oriented.
pub fn unit_normal(
    domain: &ConvexDomain2,
    x: Vec2,
    y: Vec2,
    center: Option<Vec2>,
) -> Result<NormalVector> {
    if y.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let base = y.y.atan2(y.x);
    // g_n(n, y) = F(n)·F_y(n)·y, so the condition is F_y(u)·y = 0 for the
    // direction u of n; it changes sign once on each side of y.
    let h = |theta: f64| -> Result<f64> {
        let u = Vec2::new(theta.cos(), theta.sin());
        Ok(metric_data(domain, x, u)?.1.dot(&y))
    };
    let solve = |lo: f64| -> Result<Vec2> {
        let theta = brent(h, lo, lo + PI, 1e-15)?;
        let u = Vec2::new(theta.cos(), theta.sin());
        Ok(u / hilbert_norm(domain, x, u)?)
    };
    let left = solve(base)?;
    let n = match center {
        Some(o) if left.dot(&(x - o)) < 0.0 => solve(base - PI)?,
        _ => left,
    };
    Ok(NormalVector { n })
}

/// `g_n(∇ċċ, n)` with the outward sign flip.
pub fn normal_curvature(
    domain: &ConvexDomain2,
    jet: &CurveJet,
    n: &NormalVector,
) -> Result<NormalCurvature> {
    let a = arclength_accel(domain, jet)?;
    normal_from_accel(domain, jet.c, a, n)
}

fn normal_from_accel(
    domain: &ConvexDomain2,
    c: Vec2,
    accel: Vec2,
    n: &NormalVector,
) -> Result<NormalCurvature> {
    let g = metric_data(domain, c, n.n)?.2;
    let raw = g.bilinear(accel, n.n);
    Ok(NormalCurvature { value: -raw, raw })
}

/// All three curvatures, with the normal taken away from `center`.
pub fn curvatures(domain: &ConvexDomain2, jet: &CurveJet, center: Vec2) -> Result<CurvatureSet> {
    let nabla = covariant_accel(domain, jet)?;
    let (f, _, g) = metric_data(domain, jet.c, jet.c1)?;
    let f2 = f * f;
    let accel = (nabla - jet.c1 * (g.bilinear(nabla, jet.c1) / f2)) / f2;
    let normal = unit_normal(domain, jet.c, jet.c1, Some(center))?;
    Ok(CurvatureSet {
        accel,
        normal,
        k_normal: normal_from_accel(domain, jet.c, accel, &normal)?,
        k_rund: rund_from_accel(domain, jet.c, accel)?,
        k_finsler: g.bilinear(accel, accel).max(0.0).sqrt(),
    })
}
