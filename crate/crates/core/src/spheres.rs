//! Metric circles, radius sweeps of their curvatures and exponential fits.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{curvatures, CurveJet};
use crate::error::{Error, Result};
use crate::geometry::ConvexDomain2;
use crate::jet::{Jet, Jet2};
use crate::projective::NORMALIZATION_TOL;
use crate::Vec2;

/// Center `o` and distinguished boundary point `p` of a family of circles.
#[derive(Clone, Debug)]
pub struct SphereFrame {
    pub o: Vec2,
    /// Domain angle of `p` in the convention of the domain it came from.
    pub phi0: f64,
    pub e_par: Vec2,
    pub e_perp: Vec2,
    /// `ω(0) = ‖p − o‖`.
    pub omega0: f64,
    /// `ω(π)`, the distance from `o` to the boundary opposite `p`.
    pub omega_pi: f64,
    around: ConvexDomain2,
}

impl SphereFrame {
    /// Circles about `o`, with angle zero pointing at the boundary point of
    /// `domain` at angle `phi_p`.
    pub fn new(domain: &ConvexDomain2, o: Vec2, phi_p: f64) -> Result<Self> {
        let p = domain.boundary_point(phi_p);
        let around = domain.with_base(o)?;
        let d = p - o;
        let around = around.with_reference_angle(d.y.atan2(d.x));
        let e_par = d / d.norm();
        Ok(SphereFrame {
            o,
            phi0: phi_p,
            e_par,
            e_perp: Vec2::new(-e_par.y, e_par.x),
            omega0: around.radial(0.0),
            omega_pi: around.radial(PI),
            around,
        })
    }

    /// The domain with radial function about `o` and angle zero toward `p`.
    pub fn domain(&self) -> &ConvexDomain2 {
        &self.around
    }

    /// `C = (1 + ω(π)) / ω(π)`.
    pub fn c_constant(&self) -> f64 {
        (1.0 + self.omega_pi) / self.omega_pi
    }

    /// `ω(0)·(ω(0)/ω(π) + 1)`, the limit of `x₂·e^{2r}` at angle zero.
    pub fn gap_limit(&self) -> f64 {
        self.omega0 * (self.omega0 / self.omega_pi + 1.0)
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

fn rho_jet(frame: &SphereFrame, r: f64, phi: Jet) -> Jet {
    let e = (-2.0 * r).exp();
    let w_plus = frame.around.radial_jet(phi);
    let w_minus = frame.around.radial_jet(phi + PI);
    w_plus * w_minus * (1.0 - e) / (w_plus * e + w_minus)
}

/// `ρ_r(φ) = ω(φ)ω(φ+π)(1 − e^{−2r}) / (ω(φ)e^{−2r} + ω(φ+π))`.
pub fn sphere_radial(frame: &SphereFrame, r: f64, phi: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(rho_jet(frame, r, Jet::constant(phi)).value())
}

/// `ω(φ) − ρ_r(φ)` in the cancellation-free form
/// `ω₊e^{−2r}(ω₊ + ω₋)/(ω₊e^{−2r} + ω₋)`.
pub fn sphere_gap(frame: &SphereFrame, r: f64, phi: f64) -> Result<f64> {
    check_radius(r)?;
    let e = (-2.0 * r).exp();
    let wp = frame.around.radial(phi);
    let wm = frame.around.radial(phi + PI);
    Ok(wp * e * (wp + wm) / (wp * e + wm))
}

/// `c(φ) = o + ρ_r(φ)·d(φ)` with exact first and second derivatives.
pub fn circle_jet(frame: &SphereFrame, r: f64, phi: f64) -> Result<CurveJet> {
    check_radius(r)?;
    let ang = Jet::variable(phi);
    let rho = rho_jet(frame, r, ang);
    let ref_angle = frame.e_par.y.atan2(frame.e_par.x);
    let c = Jet2::polar(ang + ref_angle).scale(rho).add_const(frame.o);
    Ok(CurveJet::new(c.value(), c.derivative(1), c.derivative(2)))
}

/// One radius of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub r: f64,
    pub x2: f64,
    pub k_n: f64,
    pub k_r: f64,
    pub k_f: f64,
    /// `x₂e^{2r} − ω(0)(ω(0)/ω(π) + 1)` evaluated at the sweep angle.
    pub gap_err: f64,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub phi: f64,
    pub rows: Vec<SweepRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Column {
    Normal,
    Rund,
    Finsler,
    NormalSquared,
    RundSquared,
    FinslerSquared,
}

impl Column {
    pub const ALL: [Column; 6] = [
        Column::Normal,
        Column::Rund,
        Column::Finsler,
        Column::NormalSquared,
        Column::RundSquared,
        Column::FinslerSquared,
    ];

    pub fn value(&self, row: &SweepRow) -> f64 {
        match self {
            Column::Normal => row.k_n,
            Column::Rund => row.k_r,
            Column::Finsler => row.k_f,
            Column::NormalSquared => row.k_n * row.k_n,
            Column::RundSquared => row.k_r * row.k_r,
            Column::FinslerSquared => row.k_f * row.k_f,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Column::Normal => "k_n",
            Column::Rund => "k_R",
            Column::Finsler => "k_F",
            Column::NormalSquared => "k_n^2",
            Column::RundSquared => "k_R^2",
            Column::FinslerSquared => "k_F^2",
        }
    }
}

impl SweepTable {
    pub fn column(&self, col: Column) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|row| row.error.is_none())
            .map(|row| (row.r, col.value(row)))
            .collect()
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }
}

fn sweep_row(frame: &SphereFrame, r: f64, phi: f64) -> SweepRow {
    let compute = || -> Result<(f64, f64, f64, f64, f64)> {
        let jet = circle_jet(frame, r, phi)?;
        let k = curvatures(&frame.around, &jet, frame.o)?;
        let x2 = sphere_gap(frame, r, phi)?;
        let wp = frame.around.radial(phi);
        let wm = frame.around.radial(phi + PI);
        let gap_err = x2 * (2.0 * r).exp() - wp * (wp / wm + 1.0);
        Ok((x2, k.k_normal.value, k.k_rund, k.k_finsler, gap_err))
    };
    match compute() {
        Ok((x2, k_n, k_r, k_f, gap_err)) => SweepRow {
            r,
            x2,
            k_n,
            k_r,
            k_f,
            gap_err,
            error: None,
        },
        Err(e) => SweepRow {
            r,
            x2: f64::NAN,
            k_n: f64::NAN,
            k_r: f64::NAN,
            k_f: f64::NAN,
            gap_err: f64::NAN,
            error: Some(e.to_string()),
        },
    }
}

/// Curvatures of the circles of radii `r_grid` at angle `phi`. Rows are
/// evaluated in parallel; failures are recorded per row.
pub fn curvature_sweep(frame: &SphereFrame, r_grid: &[f64], phi: f64) -> Result<SweepTable> {
    if r_grid.is_empty() {
        return Err(Error::InvalidInput("empty radius grid".into()));
    }
    if r_grid.windows(2).any(|w| !(w[1] > w[0])) || !(r_grid[0] > 0.0) {
        return Err(Error::InvalidInput(
            "radius grid must be positive and strictly increasing".into(),
        ));
    }
    let rows = r_grid
        .par_iter()
        .map(|&r| sweep_row(frame, r, phi))
        .collect();
    Ok(SweepTable { phi, rows })
}

/// `n` radii evenly spaced on `[r_min, r_max]`.
pub fn radius_grid(r_min: f64, r_max: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![r_min];
    }
    (0..n)
        .map(|i| r_min + (r_max - r_min) * i as f64 / (n - 1) as f64)
        .collect()
}

/// `k(r) ≈ L + A·e^{−ρr}` over a window of radii.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub limit: f64,
    pub coefficient: f64,
    pub rate: f64,
    /// RMS residual of `ln|k − L|` about the fitted line (fixed limit) or
    /// of `k` itself (free limit).
    pub rms: f64,
    pub window: (f64, f64),
    pub points: usize,
}

/// Smallest `|k − L|` accepted in a fit window.
pub const FIT_NOISE_FLOOR: f64 = 1e-11;

fn fit_window(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!(
            "{} points, at least 4 required",
            points.len()
        )));
    }
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok((lo, hi))
}

/// Least-squares line through `ln|k − L|` with `L` fixed.
pub fn fit_exponential_approach(points: &[(f64, f64)], limit: f64) -> Result<AsymptoticFit> {
    let window = fit_window(points)?;
    let sign = (points[0].1 - limit).signum();
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(r, k) in points {
        let d = k - limit;
        if !(d.abs() > 10.0 * FIT_NOISE_FLOOR) || d.signum() != sign || !d.is_finite() {
            return Err(Error::DegenerateFit(format!(
                "k - L = {d:e} at r = {r} is below the noise floor or changes sign"
            )));
        }
        xs.push(r);
        ys.push(d.abs().ln());
    }
    let (slope, intercept, rms) = linear_regression(&xs, &ys);
    Ok(AsymptoticFit {
        limit,
        coefficient: sign * intercept.exp(),
        rate: -slope,
        rms,
        window,
        points: points.len(),
    })
}

/// Gauss–Newton fit of `L`, `A` and `ρ` together, started from the
/// fixed-limit fit about `limit_guess`.
pub fn fit_exponential_free(points: &[(f64, f64)], limit_guess: f64) -> Result<AsymptoticFit> {
    let start = fit_exponential_approach(points, limit_guess)?;
    let (mut l, mut a, mut rho) = (start.limit, start.coefficient, start.rate);
    let residuals = |l: f64, a: f64, rho: f64| -> Vec<f64> {
        points
            .iter()
            .map(|&(r, k)| k - (l + a * (-rho * r).exp()))
            .collect()
    };
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    let mut res = residuals(l, a, rho);
    for _ in 0..100 {
        let mut jtj = nalgebra::Matrix3::<f64>::zeros();
        let mut jtr = nalgebra::Vector3::<f64>::zeros();
        for (i, &(r, _)) in points.iter().enumerate() {
            let e = (-rho * r).exp();
            let j = nalgebra::Vector3::new(1.0, e, -a * r * e);
            jtj += j * j.transpose();
            jtr += j * res[i];
        }
        let Some(step) = jtj.lu().solve(&jtr) else {
            return Err(Error::DegenerateFit("singular normal equations".into()));
        };
        let mut lambda = 1.0;
        let before = norm(&res);
        loop {
            let trial = residuals(l + lambda * step.x, a + lambda * step.y, rho + lambda * step.z);
            if norm(&trial) <= before || lambda < 1e-6 {
                l += lambda * step.x;
                a += lambda * step.y;
                rho += lambda * step.z;
                res = trial;
                break;
            }
            lambda *= 0.5;
        }
        if step.norm() * lambda < 1e-14 * (1.0 + l.abs() + a.abs() + rho.abs()) {
            break;
        }
    }
    Ok(AsymptoticFit {
        limit: l,
        coefficient: a,
        rate: rho,
        rms: (norm(&res) / points.len() as f64).sqrt(),
        window: start.window,
        points: points.len(),
    })
}

fn linear_regression(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    (slope, intercept, rms)
}

/// Expansion coefficients of the three curvatures predicted from boundary
/// data of a normalized domain.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Predictions {
    pub c: f64,
    pub h: f64,
    pub l_chord: f64,
    pub f3: f64,
    pub f4: f64,
    /// `C(1/H − 8f‴²/9)`.
    pub a_normal: f64,
    /// `C(2/L − 8f‴²/9)`.
    pub a_rund_sq: f64,
    /// `C(−8f‴²/9 + 4f⁗)`.
    pub a_finsler_sq: f64,
}

/// Length of the chord through the boundary point `p` in direction `dir`,
/// which must point into the domain.
pub fn chord_through_boundary_point(domain: &ConvexDomain2, p: Vec2, dir: Vec2) -> Result<f64> {
    let u = dir / dir.norm();
    let q = p + u * (1e-3 * domain.stats().scale);
    let c = domain.chord(q, u)?;
    Ok(c.length)
}

/// Predicted coefficients for a normalized domain whose base point lies
/// on the second axis, with `p` at the origin and angle zero toward `p`.
pub fn predicted_coefficients(normalized: &ConvexDomain2) -> Result<Predictions> {
    let jet = normalized.graph_jet(0.0);
    if (jet.f2 - 0.5).abs() > NORMALIZATION_TOL || jet.point.norm() > NORMALIZATION_TOL {
        return Err(Error::Consistency(format!(
            "domain is not normalized at angle zero: point {:?}, f'' = {}",
            jet.point, jet.f2
        )));
    }
    let omega_pi = normalized.radial(PI);
    let c = (1.0 + omega_pi) / omega_pi;
    let h = chord_through_boundary_point(normalized, jet.point, Vec2::y())?;
    let (f3, f4) = (jet.f3, jet.f4);
    let l_chord = chord_through_boundary_point(normalized, jet.point, Vec2::new(-f3, 0.5))?;
    let q = 8.0 * f3 * f3 / 9.0;
    Ok(Predictions {
        c,
        h,
        l_chord,
        f3,
        f4,
        a_normal: c * (1.0 / h - q),
        a_rund_sq: c * (2.0 / l_chord - q),
        a_finsler_sq: c * (4.0 * f4 - q),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::hilbert_distance;

    fn disk2() -> (ConvexDomain2, SphereFrame) {
        let d = ConvexDomain2::disk(Vec2::new(0.0, 2.0), 2.0)
            .unwrap()
            .with_base(Vec2::new(0.0, 1.0))
            .unwrap()
            .with_reference_angle(-PI / 2.0);
        let f = SphereFrame::new(&d, Vec2::new(0.0, 1.0), 0.0).unwrap();
        (d, f)
    }

    #[test]
    fn sphere_radial_examples() {
        let u = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        let f = SphereFrame::new(&u, Vec2::zeros(), 0.3).unwrap();
        assert!((sphere_radial(&f, 1.0, 0.7).unwrap() - 1f64.tanh()).abs() < 1e-14);
        let (d, f) = disk2();
        let e2 = 2f64.exp();
        let expect = 3.0 * (e2 - 1.0) / (1.0 + 3.0 * e2);
        assert!((sphere_radial(&f, 1.0, 0.0).unwrap() - expect).abs() < 1e-14);
        assert!((f.c_constant() - 4.0 / 3.0).abs() < 1e-14);
        let x = sphere_gap(&f, 1.0, 0.0).unwrap();
        assert!((x - (1.0 - expect)).abs() < 1e-14);
        for r in [0.5, 2.0, 5.0] {
            for phi in [0.0, 1.0, 2.0, 4.0] {
                let c = circle_jet(&f, r, phi).unwrap().c;
                assert!((hilbert_distance(&d, f.o, c).unwrap() - r).abs() < 1e-8);
            }
        }
        assert!(sphere_radial(&f, 0.0, 0.0).is_err());
    }

    #[test]
    fn circle_jet_examples() {
        let u = ConvexDomain2::disk(Vec2::zeros(), 1.0).unwrap();
        let f = SphereFrame::new(&u, Vec2::zeros(), 0.0).unwrap();
        let j = circle_jet(&f, 1.0, 0.0).unwrap();
        assert!((j.c1.norm() - 1f64.tanh()).abs() < 1e-14);
        assert!(j.c1.dot(&f.e_par).abs() < 1e-14);
        assert!((j.c2 + f.e_par * 1f64.tanh()).norm() < 1e-14);
    }

    #[test]
    fn circle_jet_matches_stencils() {
        let d = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![0.02])
            .unwrap();
        let f = SphereFrame::new(&d, Vec2::new(0.1, -0.05), 0.4).unwrap();
        let (r, phi, h) = (2.0, 0.3, 1e-3);
        let c = |t: f64| circle_jet(&f, r, t).unwrap().c;
        let j = circle_jet(&f, r, phi).unwrap();
        let d1 = (c(phi - 2.0 * h) - c(phi + 2.0 * h) + (c(phi + h) - c(phi - h)) * 8.0) / (12.0 * h);
        let d2 = (-c(phi - 2.0 * h) - c(phi + 2.0 * h) + (c(phi + h) + c(phi - h)) * 16.0
            - c(phi) * 30.0)
            / (12.0 * h * h);
        assert!((j.c1 - d1).norm() < 1e-7 && (j.c2 - d2).norm() < 1e-6);
    }

    #[test]
    fn disk_sweep_reproduces_coth() {
        let (_, f) = disk2();
        let t = curvature_sweep(&f, &[1.0, 2.0, 3.0, 4.0, 5.0], 0.0).unwrap();
        for row in &t.rows {
            let coth = 1.0 / row.r.tanh();
            assert!((row.k_n - coth).abs() < 1e-5 * coth, "{row:?}");
            assert!((row.k_r - coth).abs() < 1e-5 * coth);
            assert!((row.k_f - coth).abs() < 1e-5 * coth);
        }
        let fit = fit_exponential_approach(&t.column(Column::Normal)[1..], 1.0).unwrap();
        assert!((fit.rate - 2.0).abs() < 0.05 && (fit.coefficient - 2.0).abs() < 0.1);
    }

    #[test]
    fn synthetic_fit_is_exact() {
        let pts: Vec<(f64, f64)> = [2.0, 3.0, 4.0, 5.0]
            .iter()
            .map(|&r: &f64| (r, 1.0 + 3.0 * (-2.0 * r).exp()))
            .collect();
        let f = fit_exponential_approach(&pts, 1.0).unwrap();
        assert!((f.coefficient - 3.0).abs() < 1e-10 && (f.rate - 2.0).abs() < 1e-10);
        let g = fit_exponential_free(&pts, 1.0).unwrap();
        assert!((g.limit - 1.0).abs() < 1e-9 && (g.rate - 2.0).abs() < 1e-6);
        assert!(fit_exponential_approach(&pts[..3], 1.0).is_err());
    }

    #[test]
    fn prediction_examples() {
        let e = ConvexDomain2::ellipse(Vec2::new(0.0, 1.0), [2f64.sqrt(), 1.0], 0.0)
            .unwrap()
            .with_reference_angle(-PI / 2.0);
        let p = predicted_coefficients(&e).unwrap();
        assert!((p.c - 2.0).abs() < 1e-12 && (p.h - 2.0).abs() < 1e-10);
        assert!((p.l_chord - 2.0).abs() < 1e-10);
        assert!((p.a_normal - 1.0).abs() < 1e-9);
        assert!((p.a_rund_sq - 2.0).abs() < 1e-9);
        assert!((p.a_finsler_sq - 6.0).abs() < 1e-7);
    }
}
