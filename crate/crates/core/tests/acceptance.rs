//! End-to-end acceptance run. Prints one line per criterion to stderr
//! (bypassing the test harness capture) and fails if any assertion fails.

use std::f64::consts::PI;
use std::io::Write;

use hilbert_lab::expansion::{expansion_check, CheckId};
use hilbert_lab::geometry::ConvexDomain2;
use hilbert_lab::metric::{
    distance_by_quadrature, fundamental_tensor, fundamental_tensor_fd, funk_jet, hilbert_distance,
    okada_residual,
};
use hilbert_lab::spheres::{
    chord_through_boundary_point, circle_jet, curvature_sweep, fit_exponential_approach,
    predicted_coefficients, radius_grid, Column, SphereFrame,
};
use hilbert_lab::suite::{rng_for, sample_direction, sample_interior};
use hilbert_lab::{normalize, parse_domain_config, ProjectiveMap2, Setup, Vec2};
use nalgebra::{DMatrix, DVector, Vector3};

const DISK: &str = include_str!("../../../configs/disk.conf");
const DISK2: &str = include_str!("../../../configs/disk2.conf");
const ELLIPSE: &str = include_str!("../../../configs/ellipse.conf");
const BUMP: &str = include_str!("../../../configs/bump.conf");
const ELLIPSOID: &str = include_str!("../../../configs/ellipsoid.conf");

fn setup(text: &str) -> Setup {
    parse_domain_config(text).unwrap().build().unwrap()
}

fn presets() -> Vec<(&'static str, Setup)> {
    vec![
        ("disk", setup(DISK)),
        ("disk2", setup(DISK2)),
        ("ellipse", setup(ELLIPSE)),
        ("bump", setup(BUMP)),
        ("ellipsoid", setup(ELLIPSOID)),
    ]
}

struct Normalized {
    map: ProjectiveMap2,
    domain: ConvexDomain2,
    tan_beta: f64,
    tan_beta_bound: f64,
    finite: bool,
}

fn normalized(s: &Setup) -> Normalized {
    let (map, domain, r) = normalize(&s.domain, s.o, s.phi_p).unwrap();
    let finite = [
        r.alpha, r.h, r.omega_u, r.k_tilde0, r.kbar0, r.f3_tilde, r.f3_bar, r.f3_normalized,
        r.f4_normalized, r.omega_hat0,
    ]
    .iter()
    .all(|v| v.is_finite());
    Normalized {
        map,
        domain,
        tan_beta: r.tan_beta,
        tan_beta_bound: r.tan_beta_bound,
        finite,
    }
}

/// Taylor coefficients of the normalized boundary graph at the origin, from
/// a least-squares polynomial through images of original boundary points.
fn fitted_graph(s: &Setup, n: &Normalized) -> [f64; 4] {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in -40..=40 {
        let phi = s.phi_p + 1e-3 * i as f64;
        let q = n.map.apply(s.domain.boundary_point(phi)).unwrap();
        if q.x.abs() <= 0.02 {
            xs.push(q.x / 0.02);
            ys.push(q.y);
        }
    }
    let deg = 7;
    let a = DMatrix::from_fn(xs.len(), deg + 1, |i, j| xs[i].powi(j as i32));
    let b = DVector::from_vec(ys);
    let c = a.svd(true, true).solve(&b, 1e-14).unwrap();
    // undo the scaling x/0.02 and convert to derivatives
    let s = |k: usize| c[k] / 0.02f64.powi(k as i32);
    [s(0), s(1), 2.0 * s(2), 6.0 * s(3)]
}

struct Line {
    pass: bool,
    text: String,
}

fn line(pass: bool, text: String) -> Line {
    Line { pass, text }
}

fn criterion_1() -> Line {
    let s = setup(DISK);
    let mut exact: f64 = 0.0;
    let mut quad: f64 = 0.0;
    for k in 1..=9 {
        let rho = 0.1 * k as f64;
        let b = Vec2::new(rho, 0.0);
        let d = hilbert_distance(&s.domain, Vec2::zeros(), b).unwrap();
        exact = exact.max((d - rho.atanh()).abs());
        let q = distance_by_quadrature(&s.domain, Vec2::zeros(), b).unwrap();
        quad = quad.max((q - rho.atanh()).abs());
    }
    line(
        exact < 1e-9 && quad < 1e-6,
        format!("Klein distance: |d - artanh| = {exact:.2e}, quadrature {quad:.2e}"),
    )
}

fn criterion_2() -> Line {
    let mut worst: f64 = 0.0;
    for text in [DISK, DISK2, ELLIPSE, BUMP] {
        let s = setup(text);
        let frame = SphereFrame::new(&s.domain, s.o, s.phi_p).unwrap();
        for k in 1..=10 {
            let r = 0.5 * k as f64;
            for j in 0..16 {
                let c = circle_jet(&frame, r, 2.0 * PI * j as f64 / 16.0).unwrap().c;
                worst = worst.max((hilbert_distance(&s.domain, s.o, c).unwrap() - r).abs());
            }
        }
    }
    line(worst < 1e-8, format!("sphere closed form: max |d(o, c) - r| = {worst:.2e}"))
}

fn criterion_3() -> Line {
    let disk = setup(DISK2);
    let ell = normalized(&setup(ELLIPSE));
    let frames = [
        SphereFrame::new(&disk.domain, disk.o, disk.phi_p).unwrap(),
        SphereFrame::new(&ell.domain, ell.domain.base_point(), 0.0).unwrap(),
    ];
    let grid = radius_grid(1.0, 5.0, 17);
    let mut coth: f64 = 0.0;
    let mut rf: f64 = 0.0;
    for frame in &frames {
        for phi in [0.0, 1.0, PI] {
            let t = curvature_sweep(frame, &grid, phi).unwrap();
            for row in &t.rows {
                let c = 1.0 / row.r.tanh();
                for k in [row.k_n, row.k_r, row.k_f] {
                    coth = coth.max((k - c).abs() / c);
                }
                rf = rf.max((row.k_r - row.k_f).abs());
            }
        }
    }
    line(
        coth < 1e-5 && rf < 1e-6,
        format!("coth benchmark: relative error {coth:.2e}, |k_R - k_F| = {rf:.2e}"),
    )
}

/// Limit at 16 angles and rate at the distinguished angle, for the given
/// columns.
struct Asymptotics {
    /// Worst `|k(5) - 1|` over angles and columns.
    limit: f64,
    /// Fitted rates at angle zero, one per column.
    rates: Vec<f64>,
    /// `|k - 1|` strictly decreasing at angle zero for every column.
    monotone: bool,
    /// Rate range over all angles and columns where `k - 1` keeps its sign.
    range: (f64, f64),
    /// (angle, column) pairs where `k - 1` changes sign inside the window.
    sign_changes: usize,
}

fn asymptotics(frame: &SphereFrame, cols: &[Column]) -> Asymptotics {
    let grid = radius_grid(2.0, 5.0, 31);
    let mut a = Asymptotics {
        limit: 0.0,
        rates: Vec::new(),
        monotone: true,
        range: (f64::INFINITY, f64::NEG_INFINITY),
        sign_changes: 0,
    };
    for j in 0..16 {
        let phi = 2.0 * PI * j as f64 / 16.0;
        let t = curvature_sweep(frame, &grid, phi).unwrap();
        assert_eq!(t.failures(), 0);
        for &col in cols {
            let pts = t.column(col);
            a.limit = a.limit.max((pts.last().unwrap().1 - 1.0).abs());
            let rate = fit_exponential_approach(&pts, 1.0).map(|f| f.rate);
            match rate {
                Ok(r) => a.range = (a.range.0.min(r), a.range.1.max(r)),
                Err(_) => a.sign_changes += 1,
            }
            if j == 0 {
                a.rates.push(rate.unwrap_or(f64::NAN));
                a.monotone &= pts.windows(2).all(|w| (w[1].1 - 1.0).abs() < (w[0].1 - 1.0).abs());
            }
        }
    }
    a
}

fn criterion_4() -> Line {
    let s = setup(BUMP);
    let frame = SphereFrame::new(&s.domain, s.o, s.phi_p).unwrap();
    let a = asymptotics(&frame, &[Column::Normal, Column::Rund, Column::Finsler]);
    let ok = a.limit <= 0.05 && a.monotone && a.rates.iter().all(|r| (r - 2.0).abs() <= 0.2);
    line(
        ok,
        format!(
            "bump circles: max |k(5) - 1| = {:.2e} over 16 angles; rates toward p (n, R, F) = \
             {:.3} {:.3} {:.3}; other angles fit {:.3}..{:.3}, {} sign change(s) in the window",
            a.limit, a.rates[0], a.rates[1], a.rates[2], a.range.0, a.range.1, a.sign_changes
        ),
    )
}

fn criterion_5() -> Line {
    let s = setup(ELLIPSOID);
    let o = parse_domain_config(ELLIPSOID).unwrap().o;
    let body = hilbert_lab::ConvexBody3::ellipsoid(Vector3::zeros(), [1.0, 1.0, 2.0]).unwrap();
    let o3 = Vector3::new(o[0], o[1], o[2]);
    let mut limit: f64 = 0.0;
    let mut range = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ok = true;
    // eight planes through o, rotating the span about the first axis
    for k in 0..8 {
        let t = PI * k as f64 / 8.0;
        let section = body
            .planar_section(o3, Vector3::x(), Vector3::new(0.0, t.cos(), t.sin()))
            .unwrap();
        let frame = SphereFrame::new(&section, Vec2::zeros(), s.phi_p).unwrap();
        let a = asymptotics(&frame, &[Column::Normal]);
        limit = limit.max(a.limit);
        range = (range.0.min(a.range.0), range.1.max(a.range.1));
        ok &= a.monotone && a.sign_changes == 0 && (a.rates[0] - 2.0).abs() <= 0.2;
    }
    ok &= limit <= 0.05 && (range.0 - 2.0).abs() <= 0.2 && (range.1 - 2.0).abs() <= 0.2;
    line(
        ok,
        format!(
            "ellipsoid sections: max |k_n(5) - 1| = {limit:.2e}, rates {:.3}..{:.3} over 8 planes x 16 angles",
            range.0, range.1
        ),
    )
}

fn criterion_6() -> Line {
    let mut worst: f64 = 0.0;
    for (i, (_, s)) in presets().iter().enumerate() {
        let mut rng = rng_for(42, 100 + i as u64);
        for _ in 0..1000 {
            let x = sample_interior(&s.domain, &mut rng, 1e-3);
            let y = sample_direction(&mut rng);
            let r = okada_residual(&s.domain, x, y).unwrap();
            let scale = funk_jet(&s.domain, x, y).unwrap().d_theta.norm().max(1.0);
            worst = worst.max(r.norm() / scale);
        }
    }
    line(worst < 1e-6, format!("Okada residual: sup |Θ_x - Θ Θ_y| / max(1, |Θ_x|) = {worst:.2e}"))
}

fn criterion_7() -> Line {
    let mut worst: f64 = 0.0;
    for (i, (_, s)) in presets().iter().enumerate() {
        let mut rng = rng_for(42, 200 + i as u64);
        for _ in 0..100 {
            let x = sample_interior(&s.domain, &mut rng, 1e-3);
            let y = sample_direction(&mut rng);
            let g = fundamental_tensor(&s.domain, x, y).unwrap();
            let fd = fundamental_tensor_fd(&s.domain, x, y).unwrap();
            worst = worst.max(g.relative_deviation(&fd));
        }
    }
    line(worst < 1e-6, format!("tensor vs FD Hessian: max relative deviation {worst:.2e}"))
}

fn criterion_8() -> Line {
    let mut worst: f64 = 0.0;
    for (i, (_, s)) in presets().iter().enumerate() {
        let n = normalized(s);
        let mut rng = rng_for(42, 300 + i as u64);
        for _ in 0..100 {
            let a = sample_interior(&s.domain, &mut rng, 1e-3);
            let b = sample_interior(&s.domain, &mut rng, 1e-3);
            let before = hilbert_distance(&s.domain, a, b).unwrap();
            let after =
                hilbert_distance(&n.domain, n.map.apply(a).unwrap(), n.map.apply(b).unwrap())
                    .unwrap();
            worst = worst.max((before - after).abs());
        }
    }
    line(worst < 1e-8, format!("projective invariance: max |d - d'| = {worst:.2e}"))
}

fn criterion_9() -> Line {
    let mut jet: f64 = 0.0;
    let mut fit: f64 = 0.0;
    let mut ok = true;
    for (_, s) in presets() {
        let n = normalized(&s);
        let g = n.domain.graph_jet(0.0);
        jet = jet
            .max(g.point.norm())
            .max((g.tangent.y / g.tangent.x).abs())
            .max((g.f2 - 0.5).abs());
        let f = fitted_graph(&s, &n);
        fit = fit.max(f[0].abs()).max(f[1].abs()).max((f[2] - 0.5).abs());
        ok &= n.tan_beta.abs() <= n.tan_beta_bound && n.finite;
    }
    line(
        ok && jet < 1e-8 && fit < 1e-8,
        format!("normalization contract: jets {jet:.2e}, image-point fit {fit:.2e}, tan(beta) bounded"),
    )
}

fn criterion_10() -> Line {
    let mut worst: f64 = 0.0;
    for (_, s) in presets() {
        let n = normalized(&s);
        let h = chord_through_boundary_point(&n.domain, Vec2::zeros(), Vec2::y()).unwrap();
        let xs: Vec<f64> = [0.5, 0.1, 1e-2, 1e-3, 1e-4].iter().map(|f| f * h).collect();
        for id in [CheckId::F2Exact, CheckId::GarbExact] {
            worst = worst.max(expansion_check(&n.domain, id, &xs).unwrap().residual);
        }
        for &x2 in &xs {
            let g = fundamental_tensor(&n.domain, Vec2::new(0.0, x2), Vec2::y()).unwrap();
            worst = worst.max(g.g12.abs() / (g.g11 * g.g22).sqrt());
        }
    }
    line(worst < 1e-9, format!("exact identities: max residual {worst:.2e}"))
}

fn criterion_11() -> Line {
    let xs = [1e-2, 1e-3, 1e-4];
    let mut lead: f64 = 0.0;
    for (_, s) in presets() {
        let n = normalized(&s);
        for id in [CheckId::TLead, CheckId::FLead, CheckId::G11Lead, CheckId::G22Lead, CheckId::FlLead] {
            lead = lead.max(expansion_check(&n.domain, id, &xs).unwrap().residual);
        }
    }
    let s = setup(BUMP);
    let n = normalized(&s);
    let f3 = fitted_graph(&s, &n)[3];
    let t = expansion_check(&n.domain, CheckId::TX2Coef, &xs).unwrap().extrapolated;
    let th = expansion_check(&n.domain, CheckId::Thrazn, &xs).unwrap().extrapolated;
    let et = (t / (-4.0 * f3 / 3.0) - 1.0).abs();
    let eth = (th / (2.0 * f3 / 3.0) - 1.0).abs();
    line(
        lead < 0.01 && et < 0.02 && eth < 0.02 && f3.abs() > 0.1,
        format!(
            "expansions: leading orders within {lead:.2e}; bump f''' = {f3:.4} (fit), \
             T_X2COEF off by {et:.2e}, THRAZN off by {eth:.2e}"
        ),
    )
}

fn criterion_12() -> Line {
    let mut parts = Vec::new();
    let mut finite = true;
    for (name, s) in [("ellipse", setup(ELLIPSE)), ("bump", setup(BUMP))] {
        let n = normalized(&s);
        let p = predicted_coefficients(&n.domain).unwrap();
        let frame = SphereFrame::new(&n.domain, n.domain.base_point(), 0.0).unwrap();
        let t = curvature_sweep(&frame, &radius_grid(2.0, 5.0, 31), 0.0).unwrap();
        let fit = |c: Column| fit_exponential_approach(&t.column(c), 1.0).unwrap().coefficient;
        let (an, ar, af) = (fit(Column::Normal), fit(Column::RundSquared), fit(Column::FinslerSquared));
        finite &= [an, ar, af, p.a_normal, p.a_rund_sq, p.a_finsler_sq]
            .iter()
            .all(|v| v.is_finite());
        parts.push(format!(
            "{name}: A_n fitted {an:.3} predicted {:.3}, A_R^2 {ar:.3} vs {:.3}, A_F^2 {af:.3} vs {:.3}",
            p.a_normal, p.a_rund_sq, p.a_finsler_sq
        ));
    }
    line(finite, format!("diagnostic coefficients: {}", parts.join("; ")))
}

#[test]
fn acceptance_criteria() {
    let criteria: [fn() -> Line; 12] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
        criterion_12,
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, c) in criterion_iter(&criteria) {
        let l = c();
        let tag = match (i, l.pass) {
            (12, true) => "DIAG",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        };
        writeln!(err, "criterion {i:>2} {tag}  {}", l.text).unwrap();
        if !l.pass {
            failed.push(i);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

fn criterion_iter(c: &[fn() -> Line; 12]) -> impl Iterator<Item = (usize, fn() -> Line)> + '_ {
    c.iter().enumerate().map(|(i, f)| (i + 1, *f))
}
