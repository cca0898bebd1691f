use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({x}, {y}) is not strictly inside the domain")]
    NotInterior { x: f64, y: f64 },

    #[error("point is too close to the boundary: radial gap {gap:e} below floor {floor:e}")]
    Conditioning { gap: f64, floor: f64 },

    #[error("direction vector must be nonzero")]
    ZeroDirection,

    #[error("root solver failed: {0}")]
    Solver(String),

    #[error("boundary is not strictly convex: curvature {curvature:e} at phi = {phi}")]
    NonConvex { phi: f64, curvature: f64 },

    #[error("radial function is not positive at phi = {phi}")]
    NonPositiveRadius { phi: f64 },

    #[error("projective denominator vanishes at ({x}, {y})")]
    Horizon { x: f64, y: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("fit window is degenerate: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
