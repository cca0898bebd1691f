//! Hilbert and Funk distances in the unit disk and in a cubic bump.

use hilbert_lab::metric::{distance_by_quadrature, funk, hilbert_distance};
use hilbert_lab::{ConvexDomain2, Vec2};

fn main() -> hilbert_lab::Result<()> {
    let disk = ConvexDomain2::disk(Vec2::zeros(), 1.0)?;
    println!("unit disk: d(0, (rho, 0)) against artanh(rho)");
    for k in 1..=9 {
        let rho = 0.1 * k as f64;
        let d = hilbert_distance(&disk, Vec2::zeros(), Vec2::new(rho, 0.0))?;
        println!("  rho = {rho:.1}  d = {d:.15}  artanh = {:.15}", rho.atanh());
    }

    let bump = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![])?;
    let a = Vec2::new(-0.3, 0.1);
    let b = Vec2::new(0.6, -0.2);
    let d = hilbert_distance(&bump, a, b)?;
    let q = distance_by_quadrature(&bump, a, b)?;
    println!("bump: d(a, b) = {d:.15} (cross-ratio), {q:.15} (quadrature)");

    // the Funk metric is not symmetric
    let y = b - a;
    println!(
        "bump: Funk norm at a along y = {:.6}, along -y = {:.6}",
        funk(&bump, a, y)?,
        funk(&bump, a, -y)?
    );
    Ok(())
}
