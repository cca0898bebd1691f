use nalgebra::{Matrix2, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::Vec2;

/// A plane projective transformation in homogeneous coordinates.
///
/// The point `(x₁, x₂)` maps to `(m₀·X, m₁·X) / (m₂·X)` with `X = (x₁, x₂, 1)`
/// and `mᵢ` the rows of `matrix`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectiveMap2 {
    matrix: Matrix3<f64>,
    inverse: Matrix3<f64>,
}

impl ProjectiveMap2 {
    pub fn new(matrix: Matrix3<f64>) -> Result<Self> {
        let inverse = matrix
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("singular projective matrix".into()))?;
        Ok(ProjectiveMap2 { matrix, inverse })
    }

    pub fn identity() -> Self {
        ProjectiveMap2 {
            matrix: Matrix3::identity(),
            inverse: Matrix3::identity(),
        }
    }

    /// Rigid motion sending `origin` to `(0, 0)` and the orthonormal frame
    /// `(e1, e2)` to the coordinate axes.
    pub fn rigid_frame(origin: Vec2, e1: Vec2, e2: Vec2) -> Result<Self> {
        let m = Matrix3::new(
            e1.x,
            e1.y,
            -e1.dot(&origin),
            e2.x,
            e2.y,
            -e2.dot(&origin),
            0.0,
            0.0,
            1.0,
        );
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix3<f64> {
        &self.inverse
    }

    pub fn inverse(&self) -> Self {
        ProjectiveMap2 {
            matrix: self.inverse,
            inverse: self.matrix,
        }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &ProjectiveMap2) -> Self {
        ProjectiveMap2 {
            matrix: self.matrix * first.matrix,
            inverse: first.inverse * self.inverse,
        }
    }

    /// Homogeneous denominator `m₂·(x, 1)`.
    pub fn denominator(&self, x: Vec2) -> f64 {
        self.matrix[(2, 0)] * x.x + self.matrix[(2, 1)] * x.y + self.matrix[(2, 2)]
    }

    pub fn apply(&self, x: Vec2) -> Result<Vec2> {
        let h = self.matrix * Vector3::new(x.x, x.y, 1.0);
        if h.z.abs() <= 1e-300 || !h.z.is_finite() {
            return Err(Error::Horizon { x: x.x, y: x.y });
        }
        Ok(Vec2::new(h.x / h.z, h.y / h.z))
    }

    pub fn apply_inverse(&self, x: Vec2) -> Result<Vec2> {
        self.inverse().apply(x)
    }

    pub fn apply_jet(&self, x: &Jet2) -> Jet2 {
        let m = &self.matrix;
        let row = |i: usize| x.x * m[(i, 0)] + x.y * m[(i, 1)] + m[(i, 2)];
        let w = row(2);
        Jet2::new(row(0) / w, row(1) / w)
    }

    /// Differential of the map at `x`.
    pub fn jacobian(&self, x: Vec2) -> Result<Matrix2<f64>> {
        let w = self.denominator(x);
        if w.abs() <= 1e-300 {
            return Err(Error::Horizon { x: x.x, y: x.y });
        }
        let p = self.apply(x)?;
        let m = &self.matrix;
        let mut j = Matrix2::zeros();
        for r in 0..2 {
            for c in 0..2 {
                j[(r, c)] = (m[(r, c)] - p[r] * m[(2, c)]) / w;
            }
        }
        Ok(j)
    }

    /// Maps a direction `v` attached at `x` to the direction at `P(x)`.
    pub fn push_direction(&self, x: Vec2, v: Vec2) -> Result<Vec2> {
        Ok(self.jacobian(x)? * v)
    }

    pub(crate) fn push_direction_jet(&self, x: Vec2, v: &Jet2) -> Result<Jet2> {
        let j = self.jacobian(x)?;
        Ok(Jet2::new(
            v.x * j[(0, 0)] + v.y * j[(0, 1)],
            v.x * j[(1, 0)] + v.y * j[(1, 1)],
        ))
    }

    /// Residual `‖M·M⁻¹ − I‖_max`.
    pub fn inverse_residual(&self) -> f64 {
        (self.matrix * self.inverse - Matrix3::identity()).amax()
    }
}

impl Default for ProjectiveMap2 {
    fn default() -> Self {
        Self::identity()
    }
}
