//! Smooth strictly convex planar domains.
//!
//! A [`ConvexDomain2`] is described by its radial function `ω(φ)` about an
//! interior base point. The angle `φ` is measured counterclockwise from a
//! reference direction, normally the direction from the base point toward a
//! distinguished boundary point `p`. All derivatives of `ω` up to order four
//! are exact (propagated through [`Jet`] arithmetic) for every preset,
//! including projective images and planar sections of spatial bodies.

mod body3;
mod boundary;

use std::f64::consts::PI;
use std::sync::Arc;

pub use body3::{BodyKind, ConvexBody3, RadialPartials3, Vec3};
pub(crate) use boundary::Boundary;
pub use boundary::{RadialProfile, EXIT_REL_TOL};

use crate::error::{Error, Result};
use crate::jet::{Jet, Jet2};
use crate::numerics::golden_min;
use crate::projective::ProjectiveMap2;
use crate::Vec2;

/// Number of uniform angle samples used by the convexity check and sweeps.
pub const CONVEXITY_SAMPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetTag {
    Disk,
    Ellipse,
    RadialFourier,
    Custom,
    PlanarSection,
    ProjectiveImage,
}

/// Extremal data gathered when a domain is constructed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainStats {
    /// `ω₀ = min ω` about the base point.
    pub omega_min: f64,
    /// `ω₁ = max ω` about the base point.
    pub omega_max: f64,
    /// Minimum boundary curvature `k`.
    pub curvature_min: f64,
    /// Maximum boundary curvature `K`.
    pub curvature_max: f64,
    /// Longest chord through the base point among the samples.
    pub scale: f64,
    curvature_min_abs_angle: f64,
}

#[derive(Clone, Debug)]
pub struct ConvexDomain2 {
    boundary: Boundary,
    base: Vec2,
    reference_angle: f64,
    tag: PresetTag,
    stats: DomainStats,
}

/// Derivatives of the boundary written as a graph over its tangent line,
/// in the frame (tangent, inward normal) at the boundary point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryJet {
    pub point: Vec2,
    pub tangent: Vec2,
    pub normal: Vec2,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
    pub kappa: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChordInfo {
    pub x_plus: Vec2,
    pub x_minus: Vec2,
    pub r_plus: f64,
    pub r_minus: f64,
    pub length: f64,
}

/// Outcome of the radial/normal angle comparison about an interior point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleBound {
    /// Minimum over the boundary of `cos∠(o→m, outer normal at m)`.
    pub min_cos: f64,
    /// Domain angle of the boundary point realizing `min_cos`.
    pub phi_at_min: f64,
    /// Distance from `o` to the boundary.
    pub omega0: f64,
    /// Minimum boundary curvature.
    pub k_min: f64,
    /// The lower bound `ω₀·k`.
    pub bound: f64,
}

impl ConvexDomain2 {
    pub fn disk(center: Vec2, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidInput(format!("disk radius {radius}")));
        }
        Self::from_boundary(
            Boundary::Quadric {
                center,
                rotation: 0.0,
                semi_axes: [radius, radius],
            },
            center,
            0.0,
            PresetTag::Disk,
        )
    }

    /// Ellipse with semi-axes `(a, b)` along the directions at `rotation`
    /// and `rotation + π/2`.
    pub fn ellipse(center: Vec2, semi_axes: [f64; 2], rotation: f64) -> Result<Self> {
        if semi_axes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::InvalidInput(format!("ellipse semi-axes {semi_axes:?}")));
        }
        Self::from_boundary(
            Boundary::Quadric {
                center,
                rotation,
                semi_axes,
            },
            center,
            0.0,
            PresetTag::Ellipse,
        )
    }

    /// `ω(φ) = a0 + Σ cos[k-1]·cos(kφ) + sin[k-1]·sin(kφ)` about `center`.
    pub fn radial_fourier(center: Vec2, a0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        Self::from_boundary(
            Boundary::Radial {
                center,
                profile: RadialProfile::Fourier { a0, cos, sin },
            },
            center,
            0.0,
            PresetTag::RadialFourier,
        )
    }

    /// Radial function given as a closure; derivatives are computed by
    /// extrapolated central differences.
    pub fn custom_radial<F>(center: Vec2, omega: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_boundary(
            Boundary::Radial {
                center,
                profile: RadialProfile::Custom(Arc::new(omega)),
            },
            center,
            0.0,
            PresetTag::Custom,
        )
    }

    pub(crate) fn from_boundary(
        boundary: Boundary,
        base: Vec2,
        reference_angle: f64,
        tag: PresetTag,
    ) -> Result<Self> {
        let mut domain = ConvexDomain2 {
            boundary,
            base,
            reference_angle,
            tag,
            stats: DomainStats {
                omega_min: 0.0,
                omega_max: 0.0,
                curvature_min: 0.0,
                curvature_max: 0.0,
                scale: 0.0,
                curvature_min_abs_angle: 0.0,
            },
        };
        domain.stats = domain.survey()?;
        Ok(domain)
    }

    /// Samples ω and the curvature, refining the extremes.
    fn survey(&self) -> Result<DomainStats> {
        let n = CONVEXITY_SAMPLES;
        let step = 2.0 * PI / n as f64;
        let mut omegas = Vec::with_capacity(n);
        let mut kmin = (f64::INFINITY, 0.0);
        let mut kmax = f64::NEG_INFINITY;
        for i in 0..n {
            let phi = i as f64 * step;
            let w = self.radial_jet_abs(Jet::variable(self.reference_angle + phi))?;
            if !(w.value() > 0.0) {
                return Err(Error::NonPositiveRadius { phi });
            }
            let k = polar_curvature(&w);
            if k < kmin.0 {
                kmin = (k, phi);
            }
            kmax = kmax.max(k);
            omegas.push(w.value());
        }
        let curvature_at = |phi: f64| {
            self.radial_jet_abs(Jet::variable(self.reference_angle + phi))
                .map(|w| polar_curvature(&w))
                .unwrap_or(f64::NEG_INFINITY)
        };
        let (phi_min, k_refined) = golden_min(curvature_at, kmin.1 - step, kmin.1 + step, 1e-10);
        let (phi_min, k_min) = if k_refined < kmin.0 {
            (phi_min, k_refined)
        } else {
            (kmin.1, kmin.0)
        };
        if !(k_min > 0.0) {
            return Err(Error::NonConvex {
                phi: wrap_angle(phi_min),
                curvature: k_min,
            });
        }
        let imin = (0..n)
            .min_by(|&a, &b| omegas[a].total_cmp(&omegas[b]))
            .unwrap_or(0);
        let omega_at = |phi: f64| {
            self.radial_jet_abs(Jet::constant(self.reference_angle + phi))
                .map(|w| w.value())
                .unwrap_or(f64::INFINITY)
        };
        let (_, w_min) = golden_min(omega_at, imin as f64 * step - step, imin as f64 * step + step, 1e-10);
        let scale = (0..n / 2)
            .map(|i| omegas[i] + omegas[i + n / 2])
            .fold(0.0, f64::max);
        Ok(DomainStats {
            omega_min: w_min.min(omegas[imin]),
            omega_max: omegas.iter().cloned().fold(0.0, f64::max),
            curvature_min: k_min,
            curvature_max: kmax,
            scale,
            curvature_min_abs_angle: self.reference_angle + phi_min,
        })
    }

    /// Same boundary, radial function taken about `base` instead.
    pub fn with_base(&self, base: Vec2) -> Result<Self> {
        if !self.contains(base) {
            return Err(Error::NotInterior { x: base.x, y: base.y });
        }
        Self::from_boundary(self.boundary.clone(), base, self.reference_angle, self.tag)
    }

    /// Sets the absolute polar angle of the direction `φ = 0`.
    pub fn with_reference_angle(&self, angle: f64) -> Self {
        let mut d = self.clone();
        d.reference_angle = angle;
        d
    }

    /// Rotates the angle convention so that `φ = 0` points at the boundary
    /// point currently at angle `phi`.
    pub fn with_distinguished_angle(&self, phi: f64) -> Self {
        self.with_reference_angle(self.reference_angle + phi)
    }

    /// Image of the domain under `map`, with radial function about
    /// `map(base_preimage)`. The new reference direction is the image of
    /// the current one.
    pub fn projective_image(&self, map: &ProjectiveMap2, base_preimage: Vec2) -> Result<Self> {
        if !self.contains(base_preimage) {
            return Err(Error::NotInterior {
                x: base_preimage.x,
                y: base_preimage.y,
            });
        }
        let sign = map.denominator(base_preimage).signum();
        let n = 512;
        for i in 0..n {
            let p = self.boundary_point(2.0 * PI * i as f64 / n as f64);
            let den = map.denominator(p) * sign;
            if !(den > 1e-12) {
                return Err(Error::Horizon { x: p.x, y: p.y });
            }
        }
        let base = map.apply(base_preimage)?;
        let pushed = map.push_direction(base_preimage, self.direction(0.0))?;
        Self::from_boundary(
            Boundary::Projective {
                source: Arc::new(self.clone()),
                map: *map,
                sign,
            },
            base,
            pushed.y.atan2(pushed.x),
            PresetTag::ProjectiveImage,
        )
    }

    pub fn tag(&self) -> PresetTag {
        self.tag
    }

    pub fn base_point(&self) -> Vec2 {
        self.base
    }

    pub fn reference_angle(&self) -> f64 {
        self.reference_angle
    }

    pub fn stats(&self) -> &DomainStats {
        &self.stats
    }

    /// Domain angle at which the curvature is smallest.
    pub fn curvature_min_angle(&self) -> f64 {
        wrap_angle(self.stats.curvature_min_abs_angle - self.reference_angle)
    }

    /// Unit vector at domain angle `phi`.
    pub fn direction(&self, phi: f64) -> Vec2 {
        let a = self.reference_angle + phi;
        Vec2::new(a.cos(), a.sin())
    }

    fn radial_jet_abs(&self, abs_angle: Jet) -> Result<Jet> {
        self.boundary.exit_jet(self.base, &Jet2::polar(abs_angle))
    }

    /// `ω` as a jet in the domain angle.
    pub fn radial_jet(&self, phi: Jet) -> Jet {
        self.radial_jet_abs(phi + self.reference_angle)
            .expect("radial function of a validated domain")
    }

    pub fn radial(&self, phi: f64) -> f64 {
        self.radial_jet(Jet::constant(phi)).value()
    }

    /// `[ω, ω′, ω″, ω‴, ω⁗]` at `phi`.
    pub fn radial_derivatives(&self, phi: f64) -> [f64; 5] {
        self.radial_jet(Jet::variable(phi)).derivatives()
    }

    /// Boundary curve `base + ω(φ)·u(φ)` as a jet in `φ`.
    pub fn boundary_curve_jet(&self, phi: f64) -> Jet2 {
        let ang = Jet::variable(phi);
        let w = self.radial_jet(ang);
        Jet2::polar(ang + self.reference_angle)
            .scale(w)
            .add_const(self.base)
    }

    pub fn boundary_point(&self, phi: f64) -> Vec2 {
        self.base + self.direction(phi) * self.radial(phi)
    }

    /// Euclidean curvature `(ω² + 2ω′² − ωω″)/(ω² + ω′²)^{3/2}` at `phi`.
    pub fn boundary_curvature(&self, phi: f64) -> Result<f64> {
        let k = polar_curvature(&self.radial_jet(Jet::variable(phi)));
        if k > 0.0 {
            Ok(k)
        } else {
            Err(Error::NonConvex { phi, curvature: k })
        }
    }

    /// Domain angle of `x` seen from the base point, in `(-π, π]`.
    pub fn angle_of(&self, x: Vec2) -> f64 {
        let d = x - self.base;
        wrap_angle(d.y.atan2(d.x) - self.reference_angle)
    }

    /// `ω(angle of x) − ‖x − base‖`: positive inside, zero on the boundary.
    pub fn radial_gap(&self, x: Vec2) -> f64 {
        let d = x - self.base;
        if d.norm() == 0.0 {
            return self.stats.omega_min;
        }
        self.radial(self.angle_of(x)) - d.norm()
    }

    pub fn contains(&self, x: Vec2) -> bool {
        self.radial_gap(x) > 0.0
    }

    /// Euclidean distance from `x` to the boundary.
    pub fn boundary_distance(&self, x: Vec2) -> f64 {
        let n = 256;
        let step = 2.0 * PI / n as f64;
        let dist = |phi: f64| (self.boundary_point(phi) - x).norm();
        let best = (0..n)
            .map(|i| i as f64 * step)
            .min_by(|a, b| dist(*a).total_cmp(&dist(*b)))
            .unwrap_or(0.0);
        golden_min(dist, best - step, best + step, 1e-12).1
    }

    /// Signed residual of the boundary equation at `point`.
    pub fn boundary_residual(&self, point: Vec2) -> f64 {
        -self.radial_gap(point)
    }

    /// Forward exit of the ray `x + t·y`, `t > 0`.
    pub fn ray_exit(&self, x: Vec2, y: Vec2) -> Result<(f64, Vec2)> {
        if y.norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        let t = self.boundary.exit(x, y)?;
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Solver(format!("non-positive exit parameter {t}")));
        }
        Ok((t, x + y * t))
    }

    /// Exit parameter along a direction that depends on a jet parameter.
    pub fn exit_jet(&self, x: Vec2, dir: &Jet2) -> Result<Jet> {
        if dir.value().norm() == 0.0 {
            return Err(Error::ZeroDirection);
        }
        self.boundary.exit_jet(x, dir)
    }

    pub fn chord(&self, x: Vec2, y: Vec2) -> Result<ChordInfo> {
        let (_, x_plus) = self.ray_exit(x, y)?;
        let (_, x_minus) = self.ray_exit(x, -y)?;
        let r_plus = (x - x_plus).norm();
        let r_minus = (x - x_minus).norm();
        Ok(ChordInfo {
            x_plus,
            x_minus,
            r_plus,
            r_minus,
            length: r_plus + r_minus,
        })
    }

    /// Boundary at `phi` written as the graph of `f` over its tangent line.
    pub fn graph_jet(&self, phi: f64) -> BoundaryJet {
        let b = self.boundary_curve_jet(phi);
        let point = b.value();
        let d1 = b.derivative(1);
        let tangent = d1 / d1.norm();
        let normal = Vec2::new(-tangent.y, tangent.x);
        let rel = b.add_const(-point);
        let mut along = rel.dot_const(tangent);
        along.0[0] = 0.0;
        let mut across = rel.dot_const(normal);
        across.0[0] = 0.0;
        let f = across.compose(along.reverse());
        BoundaryJet {
            point,
            tangent,
            normal,
            f1: f.derivative(1),
            f2: f.derivative(2),
            f3: f.derivative(3),
            f4: f.derivative(4),
            kappa: polar_curvature(&self.radial_jet(Jet::variable(phi))),
        }
    }

    /// Compares the radial direction from `o` with the outer normal along
    /// the boundary and checks `cos∠ ≥ ω₀·k`.
    pub fn angle_cosine_bound(&self, o: Vec2) -> Result<AngleBound> {
        if !self.contains(o) {
            return Err(Error::NotInterior { x: o.x, y: o.y });
        }
        let probe = |phi: f64| -> (f64, f64) {
            let b = self.boundary_curve_jet(phi);
            let p = b.value();
            let t = b.derivative(1);
            let outward = Vec2::new(t.y, -t.x) / t.norm();
            let radial = p - o;
            (radial.dot(&outward) / radial.norm(), radial.norm())
        };
        let n = CONVEXITY_SAMPLES;
        let step = 2.0 * PI / n as f64;
        let (mut cos_best, mut dist_best) = ((f64::INFINITY, 0.0), (f64::INFINITY, 0.0));
        for i in 0..n {
            let phi = i as f64 * step;
            let (c, d) = probe(phi);
            if c < cos_best.0 {
                cos_best = (c, phi);
            }
            if d < dist_best.0 {
                dist_best = (d, phi);
            }
        }
        let (phi_c, c_ref) = golden_min(|p| probe(p).0, cos_best.1 - step, cos_best.1 + step, 1e-12);
        let (_, d_ref) = golden_min(|p| probe(p).1, dist_best.1 - step, dist_best.1 + step, 1e-12);
        let (min_cos, phi_at_min) = if c_ref < cos_best.0 {
            (c_ref, phi_c)
        } else {
            cos_best
        };
        let omega0 = d_ref.min(dist_best.0);
        let k_min = self.stats.curvature_min;
        let bound = omega0 * k_min;
        if min_cos < bound - 1e-8 {
            return Err(Error::Consistency(format!(
                "radial/normal angle bound violated at phi = {phi_at_min}: cos = {min_cos}, bound = {bound}"
            )));
        }
        Ok(AngleBound {
            min_cos,
            phi_at_min: wrap_angle(phi_at_min),
            omega0,
            k_min,
            bound,
        })
    }
}

/// Curvature of the polar curve from the jet of `ω`.
pub(crate) fn polar_curvature(w: &Jet) -> f64 {
    let (r, r1, r2) = (w.value(), w.derivative(1), w.derivative(2));
    (r * r + 2.0 * r1 * r1 - r * r2) / (r * r + r1 * r1).powf(1.5)
}

pub(crate) fn wrap_angle(a: f64) -> f64 {
    let mut x = a.rem_euclid(2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump() -> ConvexDomain2 {
        ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![]).unwrap()
    }

    fn ellipse() -> ConvexDomain2 {
        ConvexDomain2::ellipse(Vec2::new(0.0, 1.0), [2f64.sqrt(), 1.0], 0.0).unwrap()
    }

    #[test]
    fn boundary_points_of_unit_disk() {
        let d = ConvexDomain2::disk(Vec2::zeros(), 1.0)
            .unwrap()
            .with_reference_angle(-PI / 2.0);
        assert!((d.boundary_point(0.0) - Vec2::new(0.0, -1.0)).norm() < 1e-15);
        assert!((d.boundary_point(PI) - Vec2::new(0.0, 1.0)).norm() < 1e-15);
        assert!((bump().boundary_point(0.0).norm() - 1.05).abs() < 1e-15);
    }

    #[test]
    fn curvature_examples() {
        let d = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        assert!((d.boundary_curvature(0.3).unwrap() - 1.0).abs() < 1e-14);
        let d2 = ConvexDomain2::disk(Vec2::new(0.0, 2.0), 2.0)
            .unwrap()
            .with_base(Vec2::new(0.0, 1.0))
            .unwrap();
        for phi in [0.0, 0.4, 2.0, -1.1] {
            assert!((d2.boundary_curvature(phi).unwrap() - 0.5).abs() < 1e-12);
        }
        // (ω² + 2ω′² − ωω″)/ω³ with ω = 1.05, ω′ = 0, ω″ = −0.45
        let exact = (1.05f64.powi(2) + 1.05 * 0.45) / 1.05f64.powi(3);
        assert!((bump().boundary_curvature(0.0).unwrap() - exact).abs() < 1e-12);
        assert!((exact - 1.360546).abs() < 5e-6);
    }

    #[test]
    fn curvature_matches_finite_difference_oracle() {
        // Oracle: discrete curvature of the parametrized boundary curve.
        let d = bump();
        let h = 1e-4;
        let phi = 0.37;
        let p = |t: f64| d.boundary_point(t);
        let d1 = (p(phi + h) - p(phi - h)) / (2.0 * h);
        let d2 = (p(phi + h) - 2.0 * p(phi) + p(phi - h)) / (h * h);
        let k_fd = (d1.x * d2.y - d1.y * d2.x) / d1.norm().powi(3);
        assert!((d.boundary_curvature(phi).unwrap() - k_fd).abs() < 1e-6);
    }

    #[test]
    fn ray_exit_examples() {
        let d = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        let (t, e) = d.ray_exit(Vec2::zeros(), Vec2::new(0.0, 1.0)).unwrap();
        assert!((t - 1.0).abs() < 1e-15 && (e - Vec2::new(0.0, 1.0)).norm() < 1e-15);
        let (t, _) = d.ray_exit(Vec2::new(0.5, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        assert!((t - 0.5).abs() < 1e-15);
        let (t, _) = ellipse()
            .ray_exit(Vec2::new(0.0, 0.5), Vec2::new(1.0, 0.0))
            .unwrap();
        assert!((t - 1.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn ray_exit_rejects_exterior_points() {
        let d = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        assert!(matches!(
            d.ray_exit(Vec2::new(1.5, 0.0), Vec2::new(1.0, 0.0)),
            Err(Error::NotInterior { .. })
        ));
        assert!(matches!(
            bump().ray_exit(Vec2::new(1.2, 0.0), Vec2::new(0.0, 1.0)),
            Err(Error::NotInterior { .. })
        ));
        assert!(matches!(
            d.ray_exit(Vec2::zeros(), Vec2::zeros()),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn radial_exit_residual_is_tiny() {
        let d = bump();
        let x = Vec2::new(0.3, -0.4);
        for i in 0..32 {
            let a = i as f64 * 0.2;
            let (_, e) = d.ray_exit(x, Vec2::new(a.cos(), a.sin())).unwrap();
            assert!(d.boundary_residual(e).abs() < 1e-10 * d.stats().scale);
        }
    }

    #[test]
    fn chord_examples() {
        let d = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        let c = d.chord(Vec2::new(0.5, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        assert!((c.r_plus - 0.5).abs() < 1e-15);
        assert!((c.r_minus - 1.5).abs() < 1e-15);
        assert!((c.length - 2.0).abs() < 1e-15);
        let c = ellipse()
            .chord(Vec2::new(0.0, 0.5), Vec2::new(0.0, 1.0))
            .unwrap();
        assert!((c.r_plus - 1.5).abs() < 1e-14 && (c.r_minus - 0.5).abs() < 1e-14);
    }

    #[test]
    fn graph_jet_examples() {
        // Taylor oracles: R − √(R² − x²) and 1 − √(1 − x²/2).
        let c2 = ConvexDomain2::disk(Vec2::zeros(), 2.0).unwrap();
        let j = c2.graph_jet(1.0);
        assert!(j.f1.abs() < 1e-13);
        assert!((j.f2 - 0.5).abs() < 1e-12);
        assert!(j.f3.abs() < 1e-11);
        assert!((j.f4 - 0.375).abs() < 1e-10);
        let e = ellipse().with_reference_angle(-PI / 2.0);
        let j = e.graph_jet(0.0);
        assert!((j.point - Vec2::zeros()).norm() < 1e-15);
        assert!((j.f2 - 0.5).abs() < 1e-12);
        assert!(j.f3.abs() < 1e-11);
        assert!((j.f4 - 0.75).abs() < 1e-10);
        let u = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap().graph_jet(2.0);
        assert!((u.f2 - 1.0).abs() < 1e-12 && (u.f4 - 3.0).abs() < 1e-10);
    }

    #[test]
    fn graph_jet_matches_rotated_finite_differences() {
        let d = bump();
        let phi = 0.8;
        let j = d.graph_jet(phi);
        // Sample the boundary as a graph over the tangent line by solving
        // along normal lines with the exit solver.
        let inside = j.point + j.normal * 0.5;
        let graph = |s: f64| -> f64 {
            let start = inside + j.tangent * s;
            let (_, e) = d.ray_exit(start, -j.normal).unwrap();
            (e - j.point).dot(&j.normal)
        };
        let h = 2e-3;
        let f2 = (graph(h) - 2.0 * graph(0.0) + graph(-h)) / (h * h);
        let f3 = (graph(2.0 * h) - 2.0 * graph(h) + 2.0 * graph(-h) - graph(-2.0 * h))
            / (2.0 * h * h * h);
        assert!((j.f2 - f2).abs() < 1e-5, "{} vs {}", j.f2, f2);
        assert!((j.f3 - f3).abs() < 1e-3, "{} vs {}", j.f3, f3);
        assert!((j.f2 - j.kappa).abs() < 1e-6 * j.kappa);
    }

    #[test]
    fn angle_bound_examples() {
        let d = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        let r = d.angle_cosine_bound(Vec2::zeros()).unwrap();
        assert!((r.min_cos - 1.0).abs() < 1e-12 && (r.bound - 1.0).abs() < 1e-12);
        let d2 = ConvexDomain2::disk(Vec2::new(0.0, 2.0), 2.0).unwrap();
        let r = d2.angle_cosine_bound(Vec2::new(0.0, 1.0)).unwrap();
        assert!((r.bound - 0.5).abs() < 1e-9);
        assert!(r.min_cos >= 0.5 - 1e-9);
        let r = bump().angle_cosine_bound(Vec2::zeros()).unwrap();
        assert!((r.omega0 - 0.95).abs() < 1e-9);
        assert!(r.min_cos >= r.bound - 1e-8);
    }

    #[test]
    fn nonconvex_fourier_is_rejected() {
        let r = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.2], vec![]);
        assert!(matches!(r, Err(Error::NonConvex { .. })));
    }

    #[test]
    fn custom_profile_matches_fourier() {
        let f = bump();
        let c = ConvexDomain2::custom_radial(Vec2::zeros(), |t| 1.0 + 0.05 * (3.0 * t).cos()).unwrap();
        for phi in [0.1, 1.3, -2.0] {
            let a = f.radial_derivatives(phi);
            let b = c.radial_derivatives(phi);
            for k in 0..5 {
                assert!((a[k] - b[k]).abs() < 1e-5 * (1.0 + a[k].abs()), "order {k}: {} vs {}", a[k], b[k]);
            }
        }
    }

    #[test]
    fn rebased_fourier_domain_keeps_its_boundary() {
        let d = bump().with_base(Vec2::new(0.2, 0.1)).unwrap();
        for phi in [0.0, 1.0, 2.5, -1.7] {
            let p = d.boundary_point(phi);
            assert!(bump().boundary_residual(p).abs() < 1e-12);
        }
        let k = d.boundary_curvature(0.4).unwrap();
        let p = d.boundary_point(0.4);
        let k_orig = bump().boundary_curvature(bump().angle_of(p)).unwrap();
        assert!((k - k_orig).abs() < 1e-9);
    }
}
