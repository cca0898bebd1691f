//! Funk and Hilbert metrics, their coordinate derivatives and the
//! fundamental tensor.

use nalgebra::Matrix2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ConvexDomain2;
use crate::numerics::{adaptive_simpson, central_derivative, central_first};
use crate::Vec2;

/// Points whose exit distance is below this fraction of the domain scale
/// are rejected with a conditioning error.
pub const BOUNDARY_FLOOR: f64 = 1e-6;

/// Symmetric 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct SymMatrix2 {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl SymMatrix2 {
    pub fn new(g11: f64, g12: f64, g22: f64) -> Self {
        SymMatrix2 { g11, g12, g22 }
    }

    pub fn identity() -> Self {
        SymMatrix2::new(1.0, 0.0, 1.0)
    }

    pub fn from_matrix(m: &Matrix2<f64>) -> Self {
        SymMatrix2::new(m[(0, 0)], 0.5 * (m[(0, 1)] + m[(1, 0)]), m[(1, 1)])
    }

    pub fn to_matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.g11, self.g12, self.g12, self.g22)
    }

    /// `uᵀ G v`.
    pub fn bilinear(&self, u: Vec2, v: Vec2) -> f64 {
        self.g11 * u.x * v.x + self.g12 * (u.x * v.y + u.y * v.x) + self.g22 * u.y * v.y
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.g11 * v.x + self.g12 * v.y,
            self.g12 * v.x + self.g22 * v.y,
        )
    }

    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    /// Eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = 0.5 * (self.g11 + self.g22);
        let r = (0.25 * (self.g11 - self.g22).powi(2) + self.g12 * self.g12).sqrt();
        [m - r, m + r]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.g11 > 0.0 && self.det() > 0.0
    }

    /// Largest componentwise deviation, with the off-diagonal entry measured
    /// against `sqrt(g11·g22)` and the diagonal ones against themselves.
    pub fn relative_deviation(&self, reference: &SymMatrix2) -> f64 {
        let s12 = (reference.g11 * reference.g22).abs().sqrt();
        [
            (self.g11 - reference.g11).abs() / reference.g11.abs(),
            (self.g12 - reference.g12).abs() / s12,
            (self.g22 - reference.g22).abs() / reference.g22.abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn scaled(&self, s: f64) -> Self {
        SymMatrix2::new(self.g11 * s, self.g12 * s, self.g22 * s)
    }

    fn add(&self, o: &SymMatrix2) -> Self {
        SymMatrix2::new(self.g11 + o.g11, self.g12 + o.g12, self.g22 + o.g22)
    }

    fn outer(v: Vec2) -> Self {
        SymMatrix2::new(v.x * v.x, v.x * v.y, v.y * v.y)
    }
}

/// Funk metric with its first and second derivatives in the base point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FunkJet {
    pub theta: f64,
    pub d_theta: Vec2,
    pub dd_theta: SymMatrix2,
}

impl FunkJet {
    /// `Θ_y = Θ_x / Θ` (Okada).
    pub fn d_theta_y(&self) -> Vec2 {
        self.d_theta / self.theta
    }

    /// `Θ_yy = (Θ_xx·Θ − 2Θ_x⊗Θ_x) / Θ³`.
    pub fn dd_theta_y(&self) -> SymMatrix2 {
        let t = self.theta;
        self.dd_theta
            .scaled(t)
            .add(&SymMatrix2::outer(self.d_theta).scaled(-2.0))
            .scaled(t.powi(-3))
    }
}

fn exit_checked(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<(f64, Vec2)> {
    let (t, e) = domain.ray_exit(x, y)?;
    let gap = t * y.norm();
    let floor = BOUNDARY_FLOOR * domain.stats().scale;
    if gap < floor {
        return Err(Error::Conditioning { gap, floor });
    }
    Ok((t, e))
}

/// `Θ(x, y) = ‖y‖ / ‖x − x₊‖`.
pub fn funk(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<f64> {
    let (t, _) = exit_checked(domain, x, y)?;
    Ok(1.0 / t)
}

/// `F(x, y) = ½(Θ(x, y) + Θ(x, −y))`.
pub fn hilbert_norm(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<f64> {
    Ok(0.5 * (funk(domain, x, y)? + funk(domain, x, -y)?))
}

/// `Θ` and its `x`-derivatives from implicit differentiation of the exit
/// parameter, in the frame (tangent, inward normal) at the exit point where
/// the boundary is a graph with `f(0) = f′(0) = 0`, `f″(0) = κ`.
pub fn funk_jet(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<FunkJet> {
    let (t, e) = exit_checked(domain, x, y)?;
    let bj = domain.graph_jet(domain.angle_of(e));
    let (tan, nor, kappa) = (bj.tangent, bj.normal, bj.kappa);
    let y1 = tan.dot(&y);
    let y2 = nor.dot(&y);
    if !(y2 < 0.0) {
        return Err(Error::Conditioning {
            gap: -y2,
            floor: 0.0,
        });
    }
    // exit-parameter derivatives in local coordinates
    let dt = Vec2::new(0.0, -1.0 / y2);
    let a2 = -y1 / y2;
    let ddt = SymMatrix2::new(kappa / y2, kappa * a2 / y2, kappa * a2 * a2 / y2);
    let theta = 1.0 / t;
    let d_loc = -dt * theta * theta;
    let dd_loc = ddt
        .scaled(-theta * theta)
        .add(&SymMatrix2::outer(dt).scaled(2.0 * theta.powi(3)));
    let r = Matrix2::new(tan.x, tan.y, nor.x, nor.y);
    let d_theta = r.transpose() * d_loc;
    let dd = r.transpose() * dd_loc.to_matrix() * r;
    Ok(FunkJet {
        theta,
        d_theta,
        dd_theta: SymMatrix2::from_matrix(&dd),
    })
}

/// `Θ_{x^k} − Θ·Θ_{y^k}` with `Θ_y` from central differences.
pub fn okada_residual(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<Vec2> {
    let jet = funk_jet(domain, x, y)?;
    let h = 1e-3 * y.norm();
    let mut grad_y = Vec2::zeros();
    for k in 0..2 {
        let mut err = None;
        let mut dir = Vec2::zeros();
        dir[k] = 1.0;
        let g = central_first(
            |s| {
                funk(domain, x, y + dir * s).unwrap_or_else(|e| {
                    err = Some(e);
                    f64::NAN
                })
            },
            0.0,
            h,
        );
        if let Some(e) = err {
            return Err(e);
        }
        grad_y[k] = g;
    }
    Ok(jet.d_theta - grad_y * jet.theta)
}

/// First `y`-derivatives of `F` and the fundamental tensor at `(x, y)`.
pub fn metric_data(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<(f64, Vec2, SymMatrix2)> {
    let plus = funk_jet(domain, x, y)?;
    let minus = funk_jet(domain, x, -y)?;
    let f = 0.5 * (plus.theta + minus.theta);
    let fy = (plus.d_theta_y() - minus.d_theta_y()) * 0.5;
    let hess = plus.dd_theta_y().add(&minus.dd_theta_y()).scaled(0.5 * f);
    Ok((f, fy, hess.add(&SymMatrix2::outer(fy))))
}

/// `g_ij(x, y) = ½[F²]_{y^i y^j}` assembled from the Funk jets at `(x, ±y)`.
pub fn fundamental_tensor(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<SymMatrix2> {
    Ok(metric_data(domain, x, y)?.2)
}

/// Finite-difference oracle for the fundamental tensor.
///
/// With `f(θ) = F(x, u(θ))` and `v = u⊥`, the Hessian of `½F²` at the unit
/// vector `u` is `g_uu = f²`, `g_uv = f·f′`, `g_vv = f² + f′² + f·f″`. The
/// angular derivatives use the step whose Richardson estimates agree best
/// with the next finer one.
pub fn fundamental_tensor_fd(domain: &ConvexDomain2, x: Vec2, y: Vec2) -> Result<SymMatrix2> {
    if y.norm() == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let theta0 = y.y.atan2(y.x);
    let mut err = None;
    let mut f = |theta: f64| -> f64 {
        match hilbert_norm(domain, x, Vec2::new(theta.cos(), theta.sin())) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        }
    };
    let f0 = f(theta0);
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for k in [1, 2] {
        let est: Vec<f64> = (0..8)
            .map(|i| central_derivative(&mut f, theta0, k, 0.1 * 0.5f64.powi(i)))
            .collect();
        let best = est
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0].is_finite() && w[1].is_finite())
            .min_by(|a, b| (a.1[0] - a.1[1]).abs().total_cmp(&(b.1[0] - b.1[1]).abs()))
            .map(|(i, _)| est[i + 1])
            .unwrap_or(f64::NAN);
        if k == 1 { d1 = best } else { d2 = best }
    }
    if let Some(e) = err {
        return Err(e);
    }
    let u = Vec2::new(theta0.cos(), theta0.sin());
    let v = Vec2::new(-u.y, u.x);
    let r = Matrix2::from_columns(&[u, v]);
    let local = Matrix2::new(f0 * f0, f0 * d1, f0 * d1, f0 * f0 + d1 * d1 + f0 * d2);
    Ok(SymMatrix2::from_matrix(&(r * local * r.transpose())))
}

/// Hilbert distance by the cross-ratio of the chord through `a` and `b`.
pub fn hilbert_distance(domain: &ConvexDomain2, a: Vec2, b: Vec2) -> Result<f64> {
    let y = b - a;
    if y.norm() == 0.0 {
        if !domain.contains(a) {
            return Err(Error::NotInterior { x: a.x, y: a.y });
        }
        return Ok(0.0);
    }
    let (t_plus, _) = domain.ray_exit(a, y)?;
    let (t_minus, _) = domain.ray_exit(a, -y)?;
    if !(t_plus > 1.0) {
        return Err(Error::NotInterior { x: b.x, y: b.y });
    }
    // a at 0, b at 1, exits at t₊ and −t₋ along a + t·(b − a)
    Ok(0.5 * ((1.0 / t_minus).ln_1p() - (-1.0 / t_plus).ln_1p()))
}

/// `∫₀¹ F(a + t(b − a), b − a) dt` by adaptive quadrature (test oracle).
pub fn distance_by_quadrature(domain: &ConvexDomain2, a: Vec2, b: Vec2) -> Result<f64> {
    let y = b - a;
    if y.norm() == 0.0 {
        return Ok(0.0);
    }
    adaptive_simpson(|t| hilbert_norm(domain, a + y * t, y), 0.0, 1.0, 1e-10)
}
