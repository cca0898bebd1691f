//! Boundary representations and ray–boundary intersection.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::body3::Section3;
use crate::geometry::ConvexDomain2;
use crate::jet::{Jet, Jet2};
use crate::numerics::{central_derivative, safeguarded_newton};
use crate::projective::ProjectiveMap2;
use crate::Vec2;

/// Relative tolerance of the ray-exit root solve.
pub const EXIT_REL_TOL: f64 = 1e-13;

/// Radial boundary function `ω(θ)` about a fixed center, `θ` the absolute
/// polar angle.
#[derive(Clone)]
pub enum RadialProfile {
    /// `a0 + Σ_k cos[k-1]·cos(kθ) + sin[k-1]·sin(kθ)`.
    Fourier {
        a0: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
    /// Arbitrary smooth 2π-periodic function; derivatives by extrapolated
    /// central differences.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialProfile::Fourier { a0, cos, sin } => f
                .debug_struct("Fourier")
                .field("a0", a0)
                .field("cos", cos)
                .field("sin", sin)
                .finish(),
            RadialProfile::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// Base step of the finite-difference derivatives of custom profiles.
const CUSTOM_FD_STEP: [f64; 5] = [0.0, 1e-2, 2e-2, 4e-2, 6e-2];

impl RadialProfile {
    pub fn eval(&self, theta: Jet) -> Jet {
        match self {
            RadialProfile::Fourier { a0, cos, sin } => {
                let mut acc = Jet::constant(*a0);
                for (i, &a) in cos.iter().enumerate() {
                    if a != 0.0 {
                        acc += (theta * (i + 1) as f64).cos() * a;
                    }
                }
                for (i, &b) in sin.iter().enumerate() {
                    if b != 0.0 {
                        acc += (theta * (i + 1) as f64).sin() * b;
                    }
                }
                acc
            }
            RadialProfile::Custom(f) => {
                let t0 = theta.value();
                let mut d = [f(t0), 0.0, 0.0, 0.0, 0.0];
                for (k, slot) in d.iter_mut().enumerate().skip(1) {
                    *slot = central_derivative(|t| f(t), t0, k, CUSTOM_FD_STEP[k]);
                }
                theta.chain(d)
            }
        }
    }

    pub fn value(&self, theta: f64) -> f64 {
        match self {
            RadialProfile::Custom(f) => f(theta),
            _ => self.eval(Jet::constant(theta)).value(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Boundary {
    /// Ellipse `Σ ((R(-rot)(x - c))_i / a_i)² = 1`; a disk when the axes agree.
    Quadric {
        center: Vec2,
        rotation: f64,
        semi_axes: [f64; 2],
    },
    Radial {
        center: Vec2,
        profile: RadialProfile,
    },
    Section(Section3),
    /// Image of `source` under `map`.
    Projective {
        source: Arc<ConvexDomain2>,
        map: ProjectiveMap2,
        /// Sign of the homogeneous denominator on the source domain.
        sign: f64,
    },
}

/// Positive root of `A t² + B t + C = 0` for the ray `off + t·dir` leaving the
/// unit quadric `Σ w_i x_i² = 1` from an interior offset (`C < 0`).
pub(crate) fn quadric_exit(off: &[f64], dir: &[Jet], weights: &[f64]) -> Result<Jet> {
    let mut a = Jet::constant(0.0);
    let mut b = Jet::constant(0.0);
    let mut c = -1.0;
    for i in 0..off.len() {
        a += dir[i] * dir[i] * weights[i];
        b += dir[i] * (2.0 * off[i] * weights[i]);
        c += off[i] * off[i] * weights[i];
    }
    if c >= 0.0 {
        return Err(Error::NotInterior {
            x: off[0],
            y: off[1],
        });
    }
    if a.value() <= 0.0 {
        return Err(Error::ZeroDirection);
    }
    let disc = (b * b - a * (4.0 * c)).sqrt();
    // q = -(B + sign(B)√D)/2; the roots are q/A and C/q, of opposite signs.
    let q = if b.value() >= 0.0 {
        -(b + disc) * 0.5
    } else {
        (disc - b) * 0.5
    };
    let r1 = q / a;
    let r2 = Jet::constant(c) / q;
    Ok(if r1.value() > r2.value() { r1 } else { r2 })
}

impl Boundary {
    /// Parameter `t > 0` at which `x + t·dir` leaves the domain, as a jet in
    /// the parameter carried by `dir`.
    pub(crate) fn exit_jet(&self, x: Vec2, dir: &Jet2) -> Result<Jet> {
        match self {
            Boundary::Quadric {
                center,
                rotation,
                semi_axes,
            } => {
                let (s, c) = rotation.sin_cos();
                let d = x - center;
                let off = [c * d.x + s * d.y, -s * d.x + c * d.y];
                let dr = [dir.x * c + dir.y * s, dir.y * c - dir.x * s];
                let w = [semi_axes[0].powi(-2), semi_axes[1].powi(-2)];
                quadric_exit(&off, &dr, &w)
            }
            Boundary::Radial { center, profile } => {
                let z0 = x - center;
                if z0.norm() <= 1e-15 * (1.0 + center.norm()) {
                    let n = dir.norm();
                    return Ok(profile.eval(dir.angle()) / n);
                }
                let t0 = radial_exit(profile, x, dir.value(), *center)?;
                // Jet Newton with the frozen real slope: each sweep fixes one
                // more Taylor coefficient.
                let y0 = dir.value();
                let z = z0 + y0 * t0;
                let slope = radial_slope(profile, z, y0);
                let mut t = Jet::constant(t0);
                for _ in 0..=crate::jet::ORDER {
                    let zj = Jet2::new(dir.x * t + z0.x, dir.y * t + z0.y);
                    let g = zj.norm() - profile.eval(zj.angle());
                    t = t - g / slope;
                }
                Ok(t)
            }
            Boundary::Section(sec) => sec.exit_jet(x, dir),
            Boundary::Projective { source, map, sign } => {
                let xs = preimage(map, *sign, x)?;
                let inv = map.inverse();
                let ws = inv.push_direction_jet(x, dir)?;
                let s = source.exit_jet(xs, &ws)?;
                let es = Jet2::new(ws.x * s + xs.x, ws.y * s + xs.y);
                let e = map.apply_jet(&es);
                let rel = e.add_const(-x);
                Ok(rel.dot(dir) / dir.dot(dir))
            }
        }
    }

    pub(crate) fn exit(&self, x: Vec2, y: Vec2) -> Result<f64> {
        match self {
            Boundary::Radial { center, profile } => radial_exit(profile, x, y, *center),
            Boundary::Projective { source, map, sign } => {
                let xs = preimage(map, *sign, x)?;
                let ws = map.inverse().push_direction(x, y)?;
                let (_, es) = source.ray_exit(xs, ws)?;
                let e = map.apply(es)?;
                Ok((e - x).dot(&y) / y.norm_squared())
            }
            _ => Ok(self.exit_jet(x, &Jet2::constant(y))?.value()),
        }
    }
}

/// Preimage of `x`, rejecting points whose preimage lies across the horizon.
fn preimage(map: &ProjectiveMap2, sign: f64, x: Vec2) -> Result<Vec2> {
    let xs = map.apply_inverse(x)?;
    if map.denominator(xs) * sign <= 0.0 {
        return Err(Error::NotInterior { x: x.x, y: x.y });
    }
    Ok(xs)
}

/// `d/dt (‖z‖ − ω(angle z))` along the direction `y`.
fn radial_slope(profile: &RadialProfile, z: Vec2, y: Vec2) -> f64 {
    let r = z.norm();
    let w = profile.eval(Jet::variable(z.y.atan2(z.x)));
    let cross = z.x * y.y - z.y * y.x;
    z.dot(&y) / r - w.derivative(1) * cross / (r * r)
}

fn radial_exit(profile: &RadialProfile, x: Vec2, y: Vec2, center: Vec2) -> Result<f64> {
    let yn = y.norm();
    if yn == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let z0 = x - center;
    let g = |t: f64| -> (f64, f64) {
        let z = z0 + y * t;
        let r = z.norm();
        if r == 0.0 {
            return (-profile.value(y.y.atan2(y.x)), yn);
        }
        let w = profile.eval(Jet::variable(z.y.atan2(z.x)));
        let cross = z.x * y.y - z.y * y.x;
        (
            r - w.value(),
            z.dot(&y) / r - w.derivative(1) * cross / (r * r),
        )
    };
    if g(0.0).0 >= 0.0 {
        return Err(Error::NotInterior { x: x.x, y: x.y });
    }
    let mut hi = (z0.norm() + profile.value(y.y.atan2(y.x))) / yn;
    let mut tries = 0;
    while g(hi).0 <= 0.0 {
        hi *= 2.0;
        tries += 1;
        if tries > 60 {
            return Err(Error::Solver(format!(
                "could not bracket the exit along ({}, {}) from ({}, {})",
                y.x, y.y, x.x, x.y
            )));
        }
    }
    safeguarded_newton(g, 0.0, hi, EXIT_REL_TOL)
}
