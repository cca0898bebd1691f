//! Projective normalization of a cubic bump at an off-axis boundary point.

use hilbert_lab::metric::hilbert_distance;
use hilbert_lab::{normalize, ConvexDomain2, Vec2};

fn main() -> hilbert_lab::Result<()> {
    let bump = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![])?;
    let (map, hat, report) = normalize(&bump, Vec2::zeros(), 0.3)?;
    println!("{report:#?}");

    let jet = hat.graph_jet(0.0);
    println!(
        "normalized graph at the origin: f = {:.1e}, f' = {:.1e}, f'' = {:.12}, f''' = {:.6}, f'''' = {:.6}",
        jet.point.norm(),
        jet.tangent.y / jet.tangent.x,
        jet.f2,
        jet.f3,
        jet.f4
    );

    // the map is an isometry between the two Hilbert geometries
    let a = Vec2::new(0.2, 0.5);
    let b = Vec2::new(-0.6, -0.1);
    let before = hilbert_distance(&bump, a, b)?;
    let after = hilbert_distance(&hat, map.apply(a)?, map.apply(b)?)?;
    println!("d(a, b) = {before:.15} before, {after:.15} after");
    Ok(())
}
