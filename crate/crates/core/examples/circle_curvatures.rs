//! Normal, Rund and Finsler curvatures of metric circles in a cubic bump,
//! with exponential fits of their approach to 1.

use hilbert_lab::spheres::{
    curvature_sweep, fit_exponential_approach, fit_exponential_free, radius_grid, Column,
    SphereFrame,
};
use hilbert_lab::{ConvexDomain2, Vec2};

fn main() -> hilbert_lab::Result<()> {
    let bump = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![])?;
    let frame = SphereFrame::new(&bump, Vec2::zeros(), 0.3)?;
    let table = curvature_sweep(&frame, &radius_grid(0.5, 5.0, 10), 0.0)?;
    println!("{:>5} {:>12} {:>12} {:>12} {:>12}", "r", "x2", "k_n", "k_R", "k_F");
    for row in &table.rows {
        println!(
            "{:5.2} {:12.4e} {:12.8} {:12.8} {:12.8}",
            row.r, row.x2, row.k_n, row.k_r, row.k_f
        );
    }

    let fine = curvature_sweep(&frame, &radius_grid(2.0, 5.0, 31), 0.0)?;
    for col in [Column::Normal, Column::Rund, Column::Finsler] {
        let pts = fine.column(col);
        let fixed = fit_exponential_approach(&pts, 1.0)?;
        let free = fit_exponential_free(&pts, 1.0)?;
        println!(
            "{}: k ~ 1 + {:.3} e^(-{:.3} r); free fit L = {:.6}, rate {:.3}",
            col.name(),
            fixed.coefficient,
            fixed.rate,
            free.limit,
            free.rate
        );
    }
    Ok(())
}
