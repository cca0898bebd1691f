//! The fundamental tensor from implicit boundary derivatives, checked
//! against a finite-difference Hessian and the Okada identity.

use hilbert_lab::metric::{fundamental_tensor, fundamental_tensor_fd, funk_jet, okada_residual};
use hilbert_lab::{ConvexDomain2, Vec2};

fn main() -> hilbert_lab::Result<()> {
    let bump = ConvexDomain2::radial_fourier(Vec2::zeros(), 1.0, vec![0.0, 0.0, 0.05], vec![])?;
    for (x, y) in [
        (Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)),
        (Vec2::new(0.4, -0.3), Vec2::new(0.2, 1.0)),
        (Vec2::new(0.93, 0.0), Vec2::new(0.0, 1.0)),
    ] {
        let g = fundamental_tensor(&bump, x, y)?;
        let fd = fundamental_tensor_fd(&bump, x, y)?;
        let jet = funk_jet(&bump, x, y)?;
        let okada = okada_residual(&bump, x, y)?.norm() / jet.d_theta.norm().max(1.0);
        println!("x = ({:.2}, {:.2}), y = ({:.2}, {:.2})", x.x, x.y, y.x, y.y);
        println!("  g = [{:.10} {:.10}; {:.10} {:.10}]", g.g11, g.g12, g.g12, g.g22);
        println!("  eigenvalues {:?}", g.eigenvalues());
        println!("  FD deviation {:.2e}, Okada residual {:.2e}", g.relative_deviation(&fd), okada);
    }
    Ok(())
}
