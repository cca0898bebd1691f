//! Convex bodies in space and their planar sections.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::geometry::boundary::{quadric_exit, Boundary};
use crate::geometry::{ConvexDomain2, PresetTag};
use crate::jet::{Jet, Jet2};
use crate::Vec2;

pub type Vec3 = Vector3<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyKind {
    Ball,
    Ellipsoid,
}

/// Axis-aligned ellipsoid (or ball) with a radial representation about
/// `base_point`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvexBody3 {
    kind: BodyKind,
    center: Vec3,
    semi_axes: [f64; 3],
    base_point: Vec3,
}

/// Radial function and its partial derivatives up to order two in the
/// spherical angles `(θ, φ)` (θ from the third axis, φ azimuth).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialPartials3 {
    pub omega: f64,
    pub d_theta: f64,
    pub d_phi: f64,
    pub d_theta_theta: f64,
    pub d_theta_phi: f64,
    pub d_phi_phi: f64,
}

impl ConvexBody3 {
    pub fn ball(center: Vec3, radius: f64) -> Result<Self> {
        Self::build(BodyKind::Ball, center, [radius; 3])
    }

    pub fn ellipsoid(center: Vec3, semi_axes: [f64; 3]) -> Result<Self> {
        Self::build(BodyKind::Ellipsoid, center, semi_axes)
    }

    fn build(kind: BodyKind, center: Vec3, semi_axes: [f64; 3]) -> Result<Self> {
        if semi_axes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "semi-axes must be positive, got {semi_axes:?}"
            )));
        }
        Ok(ConvexBody3 {
            kind,
            center,
            semi_axes,
            base_point: center,
        })
    }

    pub fn with_base(mut self, base: Vec3) -> Result<Self> {
        if !self.contains(base) {
            return Err(Error::NotInterior { x: base.x, y: base.y });
        }
        self.base_point = base;
        Ok(self)
    }

    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn semi_axes(&self) -> [f64; 3] {
        self.semi_axes
    }

    pub fn base_point(&self) -> Vec3 {
        self.base_point
    }

    fn weights(&self) -> [f64; 3] {
        self.semi_axes.map(|a| a.powi(-2))
    }

    pub fn level(&self, p: Vec3) -> f64 {
        let w = self.weights();
        let d = p - self.center;
        (0..3).map(|i| w[i] * d[i] * d[i]).sum::<f64>() - 1.0
    }

    pub fn contains(&self, p: Vec3) -> bool {
        self.level(p) < 0.0
    }

    pub(crate) fn exit_jet(&self, x: Vec3, dir: [Jet; 3]) -> Result<Jet> {
        let d = x - self.center;
        quadric_exit(&[d.x, d.y, d.z], &dir, &self.weights())
    }

    fn radial_jet(&self, theta: Jet, phi: Jet) -> Result<Jet> {
        let st = theta.sin();
        let dir = [st * phi.cos(), st * phi.sin(), theta.cos()];
        self.exit_jet(self.base_point, dir)
    }

    /// Distance from `base_point` to the boundary in direction `(θ, φ)`.
    pub fn radial(&self, theta: f64, phi: f64) -> Result<f64> {
        Ok(self
            .radial_jet(Jet::constant(theta), Jet::constant(phi))?
            .value())
    }

    pub fn radial_partials(&self, theta: f64, phi: f64) -> Result<RadialPartials3> {
        let along_t = self.radial_jet(Jet::variable(theta), Jet::constant(phi))?;
        let along_p = self.radial_jet(Jet::constant(theta), Jet::variable(phi))?;
        let diag = self.radial_jet(Jet::variable(theta), Jet::variable(phi))?;
        let tt = along_t.derivative(2);
        let pp = along_p.derivative(2);
        Ok(RadialPartials3 {
            omega: along_t.value(),
            d_theta: along_t.derivative(1),
            d_phi: along_p.derivative(1),
            d_theta_theta: tt,
            d_theta_phi: 0.5 * (diag.derivative(2) - tt - pp),
            d_phi_phi: pp,
        })
    }

    /// The planar domain cut by `o + span(u, v)`, as a radial function about
    /// `o` in the orthonormalized `(u, v)` frame. Angle zero points along `u`.
    pub fn planar_section(&self, o: Vec3, u: Vec3, v: Vec3) -> Result<ConvexDomain2> {
        if !self.contains(o) {
            return Err(Error::NotInterior { x: o.x, y: o.y });
        }
        let nu = u.norm();
        if nu <= 1e-12 {
            return Err(Error::InvalidInput("degenerate span: u vanishes".into()));
        }
        let e1 = u / nu;
        let w = v - e1 * e1.dot(&v);
        let nw = w.norm();
        if nw <= 1e-12 * v.norm().max(1.0) {
            return Err(Error::InvalidInput(
                "degenerate span: u and v are parallel".into(),
            ));
        }
        let e2 = w / nw;
        let section = Section3 {
            body: *self,
            origin: o,
            e1,
            e2,
        };
        ConvexDomain2::from_boundary(
            Boundary::Section(section),
            Vec2::zeros(),
            0.0,
            PresetTag::PlanarSection,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Section3 {
    pub body: ConvexBody3,
    pub origin: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
}

impl Section3 {
    pub(crate) fn lift(&self, x: Vec2) -> Vec3 {
        self.origin + self.e1 * x.x + self.e2 * x.y
    }

    pub(crate) fn exit_jet(&self, x: Vec2, dir: &Jet2) -> Result<Jet> {
        let p = self.lift(x);
        let d = [0, 1, 2].map(|i| dir.x * self.e1[i] + dir.y * self.e2[i]);
        self.body.exit_jet(p, d)
    }
}
