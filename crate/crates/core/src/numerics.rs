//! Scalar root finding, quadrature, extrapolation and finite differences.

use crate::error::{Error, Result};

/// Safeguarded Newton iteration for a function with a sign change on
/// `[lo, hi]` (`f(lo) < 0 < f(hi)`). Falls back to bisection whenever the
/// Newton step leaves the bracket or fails to shrink it.
pub fn safeguarded_newton<F>(mut f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo > 0.0 || fhi < 0.0 {
        return Err(Error::Solver(format!(
            "no sign change on [{lo}, {hi}]: f(lo) = {flo:e}, f(hi) = {fhi:e}"
        )));
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, dv) = f(t);
        if v == 0.0 {
            return Ok(t);
        }
        if v < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let newton = t - v / dv;
        let next = if dv.is_finite() && dv != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - t).abs();
        t = next;
        if step <= rel_tol * t.abs() || hi - lo <= rel_tol * t.abs() {
            return Ok(t);
        }
    }
    Err(Error::Solver(format!(
        "no convergence after 200 iterations, bracket [{lo}, {hi}]"
    )))
}

/// Brent's method on a bracket with a sign change.
pub fn brent<F>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Solver(format!(
            "brent: no sign change on [{a}, {b}] ({fa:e}, {fb:e})"
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::Solver("brent: iteration limit".into()))
}

/// Golden-section minimization on `[a, b]`.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&mut f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "recursion limit on [{a}, {b}], local error {delta:e}"
        )));
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// Richardson extrapolation of a sequence `values[i] ≈ L + Σ c_j h_i^{p_j}`
/// where `h_{i+1} = h_i / ratio`. Eliminates one exponent per level and
/// returns the final (single or last) extrapolated value.
pub fn richardson(values: &[f64], ratio: f64, exponents: &[f64]) -> f64 {
    let mut row = values.to_vec();
    for &p in exponents {
        if row.len() < 2 {
            break;
        }
        let factor = ratio.powf(p);
        row = row
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
    }
    *row.last().expect("nonempty sequence")
}

/// Fourth-order central difference of `f` at `x` for the first derivative.
pub fn central_first<F: FnMut(f64) -> f64>(mut f: F, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

/// Derivative of order `k` (1..=4) by central differences at steps `h`,
/// `h/2`, `h/4`, combined by two Richardson levels.
pub fn central_derivative<F: FnMut(f64) -> f64>(mut f: F, x: f64, k: usize, h: f64) -> f64 {
    let mut stencil = |h: f64| -> f64 {
        match k {
            1 => (f(x + h) - f(x - h)) / (2.0 * h),
            2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
            3 => (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h.powi(3)),
            4 => {
                (f(x + 2.0 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h))
                    / h.powi(4)
            }
            _ => 0.0,
        }
    };
    let v = [stencil(h), stencil(0.5 * h), stencil(0.25 * h)];
    richardson(&v, 2.0, &[2.0, 4.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_finds_sqrt_two() {
        let r = safeguarded_newton(|t| (t * t - 2.0, 2.0 * t), 0.0, 4.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn newton_reports_missing_bracket() {
        let r = safeguarded_newton(|t| (t * t + 1.0, 2.0 * t), 0.0, 4.0, 1e-15);
        assert!(matches!(r, Err(Error::Solver(_))));
    }

    #[test]
    fn brent_solves_cosine() {
        let r = brent(|x| Ok(x.cos() - x), 0.0, 1.0, 1e-15).unwrap();
        assert!((r - 0.739_085_133_215_160_6).abs() < 1e-14);
    }

    #[test]
    fn simpson_integrates_smooth_function() {
        let v = adaptive_simpson(|x| Ok(1.0 / (1.0 - x * x)), 0.0, 0.5, 1e-12).unwrap();
        assert!((v - 0.5f64.atanh()).abs() < 1e-11);
    }

    #[test]
    fn richardson_removes_power_terms() {
        let h = [1e-1, 1e-2, 1e-3];
        let v: Vec<f64> = h.iter().map(|&h: &f64| 3.0 + 2.0 * h.sqrt() - 5.0 * h).collect();
        let l = richardson(&v, 10.0, &[0.5, 1.0]);
        assert!((l - 3.0).abs() < 1e-12);
    }

    #[test]
    fn central_differences_of_exp() {
        for k in 1..=4 {
            let d = central_derivative(f64::exp, 0.3, k, 0.05);
            let tol = if k == 4 { 1e-6 } else { 1e-8 };
            assert!((d - 0.3f64.exp()).abs() < tol, "order {k}: {d}");
        }
    }
}
