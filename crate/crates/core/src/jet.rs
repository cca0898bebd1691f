//! Truncated Taylor series in one variable ("jets").
//!
//! A [`Jet`] stores the Taylor coefficients `c_0 .. c_4` of a function of a
//! small parameter `ε`, i.e. `c_0 + c_1 ε + … + c_4 ε⁴`. Arithmetic propagates
//! the coefficients exactly, which gives derivatives up to order four of every
//! boundary representation in the crate without finite differences.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Number of stored coefficients (derivatives up to order `ORDER - 1`).
pub const ORDER: usize = 5;

const FACTORIAL: [f64; ORDER] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet(pub [f64; ORDER]);

impl Jet {
    pub const fn constant(value: f64) -> Self {
        Jet([value, 0.0, 0.0, 0.0, 0.0])
    }

    /// The independent variable `x0 + ε`.
    pub const fn variable(x0: f64) -> Self {
        Jet([x0, 1.0, 0.0, 0.0, 0.0])
    }

    /// Builds a jet from derivative values `f(x0), f'(x0), …`.
    pub fn from_derivatives(derivs: [f64; ORDER]) -> Self {
        let mut c = [0.0; ORDER];
        for k in 0..ORDER {
            c[k] = derivs[k] / FACTORIAL[k];
        }
        Jet(c)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `k`-th derivative with respect to `ε` at `ε = 0`.
    #[inline]
    pub fn derivative(&self, k: usize) -> f64 {
        self.0[k] * FACTORIAL[k]
    }

    pub fn derivatives(&self) -> [f64; ORDER] {
        let mut d = [0.0; ORDER];
        for k in 0..ORDER {
            d[k] = self.derivative(k);
        }
        d
    }

    pub fn scale(self, s: f64) -> Self {
        let mut c = self.0;
        for v in &mut c {
            *v *= s;
        }
        Jet(c)
    }

    /// `f(self)` given the derivatives of `f` at `self.value()`.
    pub fn chain(self, f_derivs: [f64; ORDER]) -> Self {
        let mut h = self;
        h.0[0] = 0.0;
        Jet::from_derivatives(f_derivs).compose(h)
    }

    /// Evaluates this series at `inner`, which must have zero constant term.
    pub fn compose(self, inner: Jet) -> Self {
        debug_assert!(inner.0[0] == 0.0);
        let mut acc = Jet::constant(self.0[ORDER - 1]);
        for k in (0..ORDER - 1).rev() {
            acc = acc * inner + self.0[k];
        }
        acc
    }

    /// Series reversion: for `self = x(ε)` with `x(0) = 0`, `x'(0) ≠ 0`,
    /// returns `ε(x)` as a jet in `x`.
    pub fn reverse(self) -> Self {
        let a1 = self.0[1];
        let mut higher = self;
        higher.0[0] = 0.0;
        higher.0[1] = 0.0;
        let x = Jet::variable(0.0);
        let mut eps = x.scale(1.0 / a1);
        for _ in 0..ORDER {
            eps = (x - higher.compose(eps)).scale(1.0 / a1);
        }
        eps
    }

    pub fn recip(self) -> Self {
        let x = self.value();
        let i = 1.0 / x;
        self.chain([i, -i * i, 2.0 * i.powi(3), -6.0 * i.powi(4), 24.0 * i.powi(5)])
    }

    pub fn sqrt(self) -> Self {
        let s = self.value().sqrt();
        let x = self.value();
        self.chain([
            s,
            0.5 / s,
            -0.25 / (s * x),
            0.375 / (s * x * x),
            -0.9375 / (s * x * x * x),
        ])
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.chain([s, c, -s, -c, s])
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.chain([c, -s, -c, s, c])
    }

    pub fn exp(self) -> Self {
        let e = self.value().exp();
        self.chain([e; ORDER])
    }

    pub fn ln(self) -> Self {
        let x = self.value();
        let i = 1.0 / x;
        self.chain([x.ln(), i, -i * i, 2.0 * i.powi(3), -6.0 * i.powi(4)])
    }

    pub fn powi(self, n: i32) -> Self {
        let mut acc = Jet::constant(1.0);
        for _ in 0..n.unsigned_abs() {
            acc = acc * self;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Polar angle of the planar jet vector `(x, y)`.
    pub fn atan2(y: Jet, x: Jet) -> Jet {
        let (x0, y0) = (x.value(), y.value());
        // angle(v) = angle(v0) + atan(cross(v0, v) / dot(v0, v))
        let cross = x.scale(y0) * -1.0 + y.scale(x0);
        let dot = x.scale(x0) + y.scale(y0);
        let mut ratio = cross / dot;
        ratio.0[0] = 0.0;
        let atan_series = Jet([0.0, 1.0, 0.0, -1.0 / 3.0, 0.0]);
        atan_series.compose(ratio) + y0.atan2(x0)
    }

    pub fn hypot(x: Jet, y: Jet) -> Jet {
        (x * x + y * y).sqrt()
    }
}

impl From<f64> for Jet {
    fn from(v: f64) -> Self {
        Jet::constant(v)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.0;
        for k in 0..ORDER {
            c[k] += rhs.0[k];
        }
        Jet(c)
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut c = self.0;
        c[0] += rhs;
        Jet(c)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut c = self.0;
        for k in 0..ORDER {
            c[k] -= rhs.0[k];
        }
        Jet(c)
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; ORDER];
        for i in 0..ORDER {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..ORDER - i {
                c[i + j] += self.0[i] * rhs.0[j];
            }
        }
        Jet(c)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let b0 = rhs.0[0];
        let mut q = [0.0; ORDER];
        for k in 0..ORDER {
            let mut acc = self.0[k];
            for j in 1..=k {
                acc -= rhs.0[j] * q[k - j];
            }
            q[k] = acc / b0;
        }
        Jet(q)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

/// A planar vector whose components are jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub x: Jet,
    pub y: Jet,
}

impl Jet2 {
    pub fn new(x: Jet, y: Jet) -> Self {
        Jet2 { x, y }
    }

    pub fn constant(v: nalgebra::Vector2<f64>) -> Self {
        Jet2::new(Jet::constant(v.x), Jet::constant(v.y))
    }

    /// Unit vector at polar angle `angle`.
    pub fn polar(angle: Jet) -> Self {
        Jet2::new(angle.cos(), angle.sin())
    }

    pub fn value(&self) -> nalgebra::Vector2<f64> {
        nalgebra::Vector2::new(self.x.value(), self.y.value())
    }

    /// Vector of `k`-th derivatives.
    pub fn derivative(&self, k: usize) -> nalgebra::Vector2<f64> {
        nalgebra::Vector2::new(self.x.derivative(k), self.y.derivative(k))
    }

    pub fn dot(&self, other: &Jet2) -> Jet {
        self.x * other.x + self.y * other.y
    }

    pub fn dot_const(&self, v: nalgebra::Vector2<f64>) -> Jet {
        self.x * v.x + self.y * v.y
    }

    pub fn norm(&self) -> Jet {
        Jet::hypot(self.x, self.y)
    }

    pub fn scale(&self, s: Jet) -> Self {
        Jet2::new(self.x * s, self.y * s)
    }

    pub fn add_const(&self, v: nalgebra::Vector2<f64>) -> Self {
        Jet2::new(self.x + v.x, self.y + v.y)
    }

    pub fn angle(&self) -> Jet {
        Jet::atan2(self.y, self.x)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.x, -self.y)
    }
}
