//! Small-x2 expansions of the metric on the normalized bump, extrapolated
//! with Richardson over x2 = 1e-2, 1e-3, 1e-4.

use hilbert_lab::expansion::{expansion_check, CheckId};
use hilbert_lab::{normalize, ConvexDomain2, Vec2};

fn main() -> hilbert_lab::Result<()> {
    let bump = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![])?;
    let (_, hat, report) = normalize(&bump, Vec2::zeros(), 0.3)?;
    println!("f''' = {:.6}", report.f3_normalized);
    for id in CheckId::ALL {
        let xs: &[f64] = if id.is_exact() { &[0.5, 0.05, 5e-3] } else { &[1e-2, 1e-3, 1e-4] };
        match expansion_check(&hat, id, xs) {
            Ok(r) => println!(
                "{:12} target {:>10.6}  extrapolated {:>10.6}  residual {:.2e}{}",
                id.name(),
                r.target,
                r.extrapolated,
                r.residual,
                if id.is_diagnostic() { "  (diagnostic)" } else { "" }
            ),
            Err(e) => println!("{:12} {e}", id.name()),
        }
    }
    Ok(())
}
