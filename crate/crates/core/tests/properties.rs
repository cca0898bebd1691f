use std::f64::consts::PI;

use proptest::prelude::*;

use hilbert_lab::config::{DomainConfig, DomainKind};
use hilbert_lab::curvature::{curvatures, CurveJet};
use hilbert_lab::metric::{fundamental_tensor, funk, funk_jet, hilbert_distance, hilbert_norm};
use hilbert_lab::spheres::{circle_jet, sphere_gap, SphereFrame};
use hilbert_lab::{normalize, parse_domain_config, ConvexDomain2, Vec2};

fn wavy() -> impl Strategy<Value = ConvexDomain2> {
    (-0.03..0.03f64, -0.03..0.03f64, -0.03..0.03f64).prop_map(|(c2, c3, s2)| {
        ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, c2, c3], vec![0.0, s2]).unwrap()
    })
}

fn ellipse() -> impl Strategy<Value = ConvexDomain2> {
    (0.5..2.0f64, 0.5..2.0f64, 0.0..PI).prop_map(|(a, b, rot)| {
        ConvexDomain2::ellipse(Vec2::new(0.3, -0.2), [a, b], rot).unwrap()
    })
}

fn domain() -> impl Strategy<Value = ConvexDomain2> {
    prop_oneof![wavy(), ellipse()]
}

/// A point at fraction `s` of the way from the base point to the boundary.
fn inside(d: &ConvexDomain2, phi: f64, s: f64) -> Vec2 {
    d.base_point() + d.direction(phi) * (s * d.radial(phi))
}

fn unit(a: f64) -> Vec2 {
    Vec2::new(a.cos(), a.sin())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_is_a_metric(
        d in domain(),
        p in (0.0..2.0 * PI, 0.0..0.95f64),
        q in (0.0..2.0 * PI, 0.0..0.95f64),
        m in (0.0..2.0 * PI, 0.0..0.95f64),
    ) {
        let (a, b, c) = (inside(&d, p.0, p.1), inside(&d, q.0, q.1), inside(&d, m.0, m.1));
        let ab = hilbert_distance(&d, a, b).unwrap();
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - hilbert_distance(&d, b, a).unwrap()).abs() <= 1e-12 * (1.0 + ab));
        let detour = hilbert_distance(&d, a, c).unwrap() + hilbert_distance(&d, c, b).unwrap();
        prop_assert!(ab <= detour + 1e-12 * (1.0 + detour));
        prop_assert_eq!(hilbert_distance(&d, a, a).unwrap(), 0.0);
    }

    #[test]
    fn norm_is_homogeneous_and_symmetric(
        d in domain(), phi in 0.0..2.0 * PI, s in 0.0..0.95f64, a in 0.0..2.0 * PI, lambda in 0.1..10.0f64,
    ) {
        let x = inside(&d, phi, s);
        let y = unit(a);
        let f = hilbert_norm(&d, x, y).unwrap();
        prop_assert!((hilbert_norm(&d, x, y * lambda).unwrap() - lambda * f).abs() <= 1e-12 * lambda * f);
        prop_assert!((hilbert_norm(&d, x, -y).unwrap() - f).abs() <= 1e-12 * f);
        // Funk is positively homogeneous but not symmetric in general
        prop_assert!((funk(&d, x, y * lambda).unwrap() - lambda * funk(&d, x, y).unwrap()).abs()
            <= 1e-12 * lambda * f);
    }

    #[test]
    fn tensor_is_positive_with_euler_identity(
        d in domain(), phi in 0.0..2.0 * PI, s in 0.0..0.95f64, a in 0.0..2.0 * PI,
    ) {
        let x = inside(&d, phi, s);
        let y = unit(a);
        let g = fundamental_tensor(&d, x, y).unwrap();
        let f = hilbert_norm(&d, x, y).unwrap();
        prop_assert!(g.is_positive_definite());
        prop_assert!((g.bilinear(y, y) - f * f).abs() <= 1e-10 * f * f);
        // zero-homogeneous in y
        let g2 = fundamental_tensor(&d, x, y * 3.7).unwrap();
        prop_assert!(g.relative_deviation(&g2) < 1e-10);
    }

    #[test]
    fn okada_identity_from_jets(
        d in domain(), phi in 0.0..2.0 * PI, s in 0.0..0.9f64, a in 0.0..2.0 * PI,
    ) {
        // Okada plus Euler's relation for the 1-homogeneous Θ: Θ_x·y = Θ²
        let x = inside(&d, phi, s);
        let y = unit(a);
        let j = funk_jet(&d, x, y).unwrap();
        prop_assert!((j.d_theta.dot(&y) - j.theta * j.theta).abs() <= 1e-9 * j.theta * j.theta);
    }

    #[test]
    fn spheres_sit_at_their_radius(
        d in domain(), phi0 in 0.0..2.0 * PI, s in 0.0..0.6f64, phi in 0.0..2.0 * PI, r in 0.5..5.0f64,
    ) {
        let o = inside(&d, phi0, s);
        let frame = SphereFrame::new(&d, o, 0.7).unwrap();
        let c = circle_jet(&frame, r, phi).unwrap();
        prop_assert!((hilbert_distance(&d, o, c.c).unwrap() - r).abs() < 1e-8);
        // the gap to the boundary shrinks with the radius
        prop_assert!(sphere_gap(&frame, r + 0.5, phi).unwrap() < sphere_gap(&frame, r, phi).unwrap());
    }

    #[test]
    fn klein_circles_have_coth_curvature(
        d in ellipse(), phi0 in 0.0..2.0 * PI, s in 0.0..0.6f64, phi in 0.0..2.0 * PI, r in 1.0..5.0f64,
    ) {
        let o = inside(&d, phi0, s);
        let frame = SphereFrame::new(&d, o, 0.0).unwrap();
        let jet = circle_jet(&frame, r, phi).unwrap();
        let k = curvatures(&d, &jet, o).unwrap();
        let c = 1.0 / r.tanh();
        prop_assert!((k.k_normal.value - c).abs() < 1e-5 * c);
        prop_assert!((k.k_rund - c).abs() < 1e-5 * c);
        prop_assert!((k.k_finsler - c).abs() < 1e-5 * c);
    }

    #[test]
    fn curvatures_ignore_parametrization(
        d in wavy(), phi in 0.0..2.0 * PI, s in 0.0..0.8f64, a in 0.0..2.0 * PI,
        acc in (-2.0..2.0f64, -2.0..2.0f64), lambda in 0.2..5.0f64, mu in -2.0..2.0f64,
    ) {
        let x = inside(&d, phi, s);
        let jet = CurveJet::new(x, unit(a), Vec2::new(acc.0, acc.1));
        let k1 = curvatures(&d, &jet, d.base_point()).unwrap();
        let k2 = curvatures(&d, &jet.reparametrized(lambda, mu), d.base_point()).unwrap();
        prop_assert!((k1.k_finsler - k2.k_finsler).abs() <= 1e-8 * (1.0 + k1.k_finsler));
        prop_assert!((k1.k_rund - k2.k_rund).abs() <= 1e-8 * (1.0 + k1.k_rund));
        prop_assert!((k1.k_normal.value - k2.k_normal.value).abs() <= 1e-8 * (1.0 + k1.k_normal.value.abs()));
    }

    #[test]
    fn normalization_preserves_distances(
        d in domain(), phi_p in 0.0..2.0 * PI,
        p in (0.0..2.0 * PI, 0.0..0.9f64), q in (0.0..2.0 * PI, 0.0..0.9f64),
    ) {
        let o = d.base_point();
        let (map, hat, _) = normalize(&d, o, phi_p).unwrap();
        let jet = hat.graph_jet(0.0);
        prop_assert!(jet.point.norm() < 1e-8 && (jet.f2 - 0.5).abs() < 1e-8);
        let (a, b) = (inside(&d, p.0, p.1), inside(&d, q.0, q.1));
        let before = hilbert_distance(&d, a, b).unwrap();
        let after = hilbert_distance(&hat, map.apply(a).unwrap(), map.apply(b).unwrap()).unwrap();
        prop_assert!((before - after).abs() < 1e-8 * before.max(1.0));
    }
}

fn config() -> impl Strategy<Value = DomainConfig> {
    let disk = (0.1..5.0f64, -3.0..3.0f64, -3.0..3.0f64, 0.0..0.9f64).prop_map(|(r, cx, cy, s)| {
        DomainConfig {
            kind: DomainKind::Disk { radius: r, center: [cx, cy] },
            o: vec![cx + s * r, cy],
            phi_p: 0.0,
        }
    });
    let fourier = (
        0.5..2.0f64,
        proptest::collection::vec(-0.01..0.01f64, 0..4),
        proptest::collection::vec(-0.01..0.01f64, 0..3),
        -PI..PI,
    )
        .prop_map(|(a0, cos, sin, phi_p)| DomainConfig {
            kind: DomainKind::RadialFourier { a0, cos, sin, center: [0.0, 0.0] },
            o: vec![0.0, 0.0],
            phi_p,
        });
    let ellipsoid = (0.5..2.0f64, 0.5..2.0f64, 0.5..2.0f64).prop_map(|(a, b, c)| DomainConfig {
        kind: DomainKind::Ellipsoid3 {
            semi_axes: [a, b, c],
            center: [0.0; 3],
            u: [1.0, 0.0, 0.0],
            v: [0.0, 1.0, 1.0],
        },
        o: vec![0.1, 0.0, 0.0],
        phi_p: 0.0,
    });
    prop_oneof![disk, fourier, ellipsoid]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_round_trip(c in config()) {
        let text = c.render();
        let back = parse_domain_config(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.render(), text);
    }
}
