//! Numerical laboratory for two-dimensional Hilbert geometries.
//!
//! The crate evaluates Funk and Hilbert metrics of smooth strictly convex
//! planar domains together with their exact coordinate derivatives, the
//! Finsler fundamental tensor, the Chern–Rund covariant derivative along
//! curves, and the normal, Rund and Finsler curvatures of metric circles.
//! It also implements the projective normalization of a domain at a
//! boundary point and checks the asymptotics of circle curvatures for large
//! radii.

pub mod config;
pub mod curvature;
pub mod error;
pub mod expansion;
pub mod geometry;
pub mod jet;
pub mod metric;
pub mod numerics;
pub mod projective;
pub mod report;
pub mod spheres;
pub mod suite;

pub use config::{parse_domain_config, DomainConfig, Setup};
pub use error::{Error, Result};
pub use geometry::{BoundaryJet, ChordInfo, ConvexBody3, ConvexDomain2, PresetTag};
pub use projective::{normalize, NormalizationReport, ProjectiveMap2};
pub use report::{CheckRecord, Status, VerificationReport};
pub use suite::{run_suite, Check, SuiteOptions};

pub type Vec2 = nalgebra::Vector2<f64>;
