//! Circles in planar sections of the (1,1,2) ellipsoid. Every section is an
//! ellipse, so circle curvatures equal coth r.

use std::f64::consts::PI;

use hilbert_lab::curvature::curvatures;
use hilbert_lab::spheres::{circle_jet, SphereFrame};
use hilbert_lab::{ConvexBody3, Vec2};
use nalgebra::Vector3;

fn main() -> hilbert_lab::Result<()> {
    let body = ConvexBody3::ellipsoid(Vector3::zeros(), [1.0, 1.0, 2.0])?;
    let o = Vector3::new(0.1, -0.2, 0.3);
    for k in 0..4 {
        let t = PI * k as f64 / 4.0;
        let section = body.planar_section(o, Vector3::x(), Vector3::new(0.0, t.cos(), t.sin()))?;
        let frame = SphereFrame::new(&section, Vec2::zeros(), 0.0)?;
        print!("plane {k}:");
        for r in [1.0, 3.0, 5.0] {
            let jet = circle_jet(&frame, r, 0.7)?;
            let c = curvatures(&section, &jet, Vec2::zeros())?;
            print!("  r={r}: k_n - coth = {:+.1e}", c.k_normal.value - 1.0 / r.tanh());
        }
        println!();
    }
    Ok(())
}
