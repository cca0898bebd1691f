//! Small-`x₂` expansions of the Funk and Hilbert metric and the fundamental
//! tensor at points `(0, x₂)` of a normalized domain, checked against the
//! exact numerical values.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ConvexDomain2;
use crate::metric::{funk, hilbert_norm, metric_data};
use crate::numerics::richardson;
use crate::projective::NORMALIZATION_TOL;
use crate::spheres::chord_through_boundary_point;
use crate::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CheckId {
    /// `t(0, x₂, 1, 0) / (2√x₂) → 1`.
    TLead,
    /// `(t − 2√x₂)/x₂ → −4f‴/3`.
    TX2Coef,
    /// `2√x₂·F(0, x₂, 1, 0) → 1`.
    FLead,
    /// `(F − 1/(2√x₂))/√x₂` against `2f‴²/9`; diagnostic only.
    FSqrtCoef,
    /// `Θ(0, x₂, 1, 0) − Θ(0, x₂, −1, 0) → 2f‴/3`.
    Thrazn,
    /// `4x₂·g₁₁(0, x₂, 1, 0) → 1`.
    G11Lead,
    /// `6x₂·g₁₂(0, x₂, 1, 0)/f‴ → 1`; diagnostic only.
    G12Lead,
    /// `4x₂²·g₂₂(0, x₂, 1, 0) → 1`.
    G22Lead,
    /// `F(0, x₂, 0, 1) = ½(1/(H − x₂) + 1/x₂)` exactly.
    F2Exact,
    /// `g₂₂(0, x₂, 0, 1) = ¼(1/(H − x₂) + 1/x₂)²` and `g₁₂ = 0` exactly.
    GarbExact,
    /// `4x₂·F(0, x₂, l, ½) → 1` with `l = −f‴`.
    FlLead,
}

impl CheckId {
    pub const ALL: [CheckId; 11] = [
        CheckId::TLead,
        CheckId::TX2Coef,
        CheckId::FLead,
        CheckId::FSqrtCoef,
        CheckId::Thrazn,
        CheckId::G11Lead,
        CheckId::G12Lead,
        CheckId::G22Lead,
        CheckId::F2Exact,
        CheckId::GarbExact,
        CheckId::FlLead,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckId::TLead => "T_LEAD",
            CheckId::TX2Coef => "T_X2COEF",
            CheckId::FLead => "F_LEAD",
            CheckId::FSqrtCoef => "F_SQRT_COEF",
            CheckId::Thrazn => "THRAZN",
            CheckId::G11Lead => "G11_LEAD",
            CheckId::G12Lead => "G12_LEAD",
            CheckId::G22Lead => "G22_LEAD",
            CheckId::F2Exact => "F2_EXACT",
            CheckId::GarbExact => "GARB_EXACT",
            CheckId::FlLead => "FL_LEAD",
        }
    }

    /// Exact identities compare every sample, not a limit.
    pub fn is_exact(&self) -> bool {
        matches!(self, CheckId::F2Exact | CheckId::GarbExact)
    }

    pub fn is_diagnostic(&self) -> bool {
        matches!(self, CheckId::FSqrtCoef | CheckId::G12Lead)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown expansion check '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub id: CheckId,
    pub x2: Vec<f64>,
    /// Scaled quantity at each `x₂` (for exact checks: the relative residual).
    pub values: Vec<f64>,
    pub target: f64,
    /// Richardson limit of `values` (for exact checks: the largest residual).
    pub extrapolated: f64,
    /// `|extrapolated − target|`, relative when the target is nonzero.
    pub residual: f64,
    /// `log(|v_i − target| / |v_{i+1} − target|) / log(x₂ ratio)`.
    pub empirical_order: Vec<f64>,
}

/// Boundary data of a normalized domain used by the checks.
struct Normalized<'a> {
    domain: &'a ConvexDomain2,
    f3: f64,
    h: f64,
}

impl<'a> Normalized<'a> {
    fn new(domain: &'a ConvexDomain2) -> Result<Self> {
        let jet = domain.graph_jet(0.0);
        if (jet.f2 - 0.5).abs() > NORMALIZATION_TOL
            || jet.point.norm() > NORMALIZATION_TOL
            || (jet.tangent.y).abs() > NORMALIZATION_TOL
        {
            return Err(Error::Consistency(format!(
                "domain is not normalized at angle zero: point {:?}, tangent {:?}, f'' = {}",
                jet.point, jet.tangent, jet.f2
            )));
        }
        let h = chord_through_boundary_point(domain, Vec2::zeros(), Vec2::y())?;
        Ok(Normalized {
            domain,
            f3: jet.f3,
            h,
        })
    }

    fn value(&self, id: CheckId, x2: f64) -> Result<f64> {
        let d = self.domain;
        let x = Vec2::new(0.0, x2);
        let s = x2.sqrt();
        let e1 = Vec2::x();
        let e2 = Vec2::y();
        Ok(match id {
            CheckId::TLead => d.ray_exit(x, e1)?.0 / (2.0 * s),
            CheckId::TX2Coef => (d.ray_exit(x, e1)?.0 - 2.0 * s) / x2,
            CheckId::FLead => 2.0 * s * hilbert_norm(d, x, e1)?,
            CheckId::FSqrtCoef => (hilbert_norm(d, x, e1)? - 0.5 / s) / s,
            CheckId::Thrazn => funk(d, x, e1)? - funk(d, x, -e1)?,
            CheckId::G11Lead => 4.0 * x2 * metric_data(d, x, e1)?.2.g11,
            CheckId::G12Lead => 6.0 * x2 * metric_data(d, x, e1)?.2.g12 / self.f3,
            CheckId::G22Lead => 4.0 * x2 * x2 * metric_data(d, x, e1)?.2.g22,
            CheckId::F2Exact => {
                let exact = 0.5 * (1.0 / (self.h - x2) + 1.0 / x2);
                (hilbert_norm(d, x, e2)? - exact).abs() / exact
            }
            CheckId::GarbExact => {
                let g = metric_data(d, x, e2)?.2;
                let exact = 0.25 * (1.0 / (self.h - x2) + 1.0 / x2).powi(2);
                let off = g.g12.abs() / (g.g11 * g.g22).abs().sqrt();
                ((g.g22 - exact).abs() / exact).max(off)
            }
            CheckId::FlLead => 4.0 * x2 * hilbert_norm(d, x, Vec2::new(-self.f3, 0.5))?,
        })
    }

    fn target(&self, id: CheckId) -> f64 {
        let f3 = self.f3;
        match id {
            CheckId::TX2Coef => -4.0 * f3 / 3.0,
            CheckId::FSqrtCoef => 2.0 * f3 * f3 / 9.0,
            CheckId::Thrazn => 2.0 * f3 / 3.0,
            CheckId::F2Exact | CheckId::GarbExact => 0.0,
            _ => 1.0,
        }
    }
}

/// Upper end of the admissible `x₂` range for limit checks, as a fraction
/// of `H`. Exact identities accept any `x₂` below `H`.
pub const SAFE_X2_FRACTION: f64 = 0.25;

/// Runs one check on the points `(0, x₂)` of a normalized domain. The
/// sequence must decrease geometrically for the extrapolation.
pub fn expansion_check(
    domain: &ConvexDomain2,
    id: CheckId,
    x2_sequence: &[f64],
) -> Result<ExpansionReport> {
    let norm = Normalized::new(domain)?;
    if x2_sequence.is_empty() {
        return Err(Error::InvalidInput("empty x2 sequence".into()));
    }
    let hi = if id.is_exact() {
        norm.h * (1.0 - 1e-6)
    } else {
        SAFE_X2_FRACTION * norm.h
    };
    let lo = crate::metric::BOUNDARY_FLOOR * domain.stats().scale;
    if let Some(bad) = x2_sequence.iter().find(|&&x| !(x > lo && x <= hi)) {
        return Err(Error::InvalidInput(format!(
            "x2 = {bad} outside the safe range ({lo:e}, {hi}]"
        )));
    }
    if id == CheckId::G12Lead && norm.f3.abs() < 1e-8 {
        return Err(Error::InvalidInput(
            "G12_LEAD needs a nonzero third derivative at the origin".into(),
        ));
    }
    let values = x2_sequence
        .iter()
        .map(|&x| norm.value(id, x))
        .collect::<Result<Vec<f64>>>()?;
    let target = norm.target(id);
    let ratio = if x2_sequence.len() > 1 {
        x2_sequence[0] / x2_sequence[1]
    } else {
        10.0
    };
    let (extrapolated, residual) = if id.is_exact() {
        let m = values.iter().cloned().fold(0.0, f64::max);
        (m, m)
    } else {
        if x2_sequence.windows(2).any(|w| ((w[0] / w[1]) / ratio - 1.0).abs() > 1e-9 || ratio <= 1.0) {
            return Err(Error::InvalidInput(
                "x2 sequence must decrease with a constant ratio".into(),
            ));
        }
        let levels = (values.len() - 1).min(2);
        let e = richardson(&values, ratio, &[0.5, 1.0][..levels]);
        let r = if target.abs() > 1e-12 {
            (e - target).abs() / target.abs()
        } else {
            (e - target).abs()
        };
        (e, r)
    };
    let empirical_order = values
        .windows(2)
        .map(|w| ((w[0] - target).abs() / (w[1] - target).abs()).ln() / ratio.ln())
        .collect();
    Ok(ExpansionReport {
        id,
        x2: x2_sequence.to_vec(),
        values,
        target,
        extrapolated,
        residual,
        empirical_order,
    })
}
