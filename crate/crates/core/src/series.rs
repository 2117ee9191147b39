//! Bivariate Taylor polynomials truncated at total degree 3.
//!
//! A [`Series`] stores the coefficients of
//! `Σ c_ij dxⁱ dyʲ` for `i + j ≤ 3`, i.e. a third-order jet of a scalar
//! function at a base point. Arithmetic and the elementary functions used by
//! the closed-form families propagate jets exactly (forward-mode
//! differentiation), so the derivatives read back by [`Series::jet3`] carry
//! only rounding error.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::shape::Jet3;

/// Monomial exponents in storage order.
const EXP: [(usize, usize); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

const fn slot(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Series {
    c: [f64; 10],
}

impl Series {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; 10];
        c[0] = v;
        Self { c }
    }

    /// The coordinate function `x` expanded at `x0`.
    pub fn var_x(x0: f64) -> Self {
        let mut s = Self::constant(x0);
        s.c[1] = 1.0;
        s
    }

    /// The coordinate function `y` expanded at `y0`.
    pub fn var_y(y0: f64) -> Self {
        let mut s = Self::constant(y0);
        s.c[2] = 1.0;
        s
    }

    /// Builds the series of a function from its partial derivatives
    /// `∂ˣⁱ∂ʸʲ f`, indexed like [`Series::derivative`].
    pub fn from_jet3(j: &Jet3) -> Self {
        let d = [
            j.f, j.fx, j.fy, j.fxx, j.fxy, j.fyy, j.fxxx, j.fxxy, j.fxyy, j.fyyy,
        ];
        let mut c = [0.0; 10];
        for (k, &(i, jj)) in EXP.iter().enumerate() {
            c[k] = d[k] / (factorial(i) * factorial(jj));
        }
        Self { c }
    }

    /// First-order truncation of a function known through its gradient and
    /// Hessian at the base point; used to differentiate expressions in
    /// `f_x, f_y` once.
    pub fn linear(v: f64, dx: f64, dy: f64) -> Self {
        let mut s = Self::constant(v);
        s.c[1] = dx;
        s.c[2] = dy;
        s
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Partial derivative `∂ˣⁱ ∂ʸʲ` at the base point, `i + j ≤ 3`.
    pub fn derivative(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= 3, "series truncated at order 3");
        self.c[slot(i, j)] * factorial(i) * factorial(j)
    }

    pub fn dx(&self) -> f64 {
        self.c[1]
    }

    pub fn dy(&self) -> f64 {
        self.c[2]
    }

    pub fn jet3(&self) -> Jet3 {
        Jet3 {
            f: self.derivative(0, 0),
            fx: self.derivative(1, 0),
            fy: self.derivative(0, 1),
            fxx: self.derivative(2, 0),
            fxy: self.derivative(1, 1),
            fyy: self.derivative(0, 2),
            fxxx: self.derivative(3, 0),
            fxxy: self.derivative(2, 1),
            fxyy: self.derivative(1, 2),
            fyyy: self.derivative(0, 3),
        }
    }

    /// `g ∘ self`, given `g` and its first three derivatives at `self.value()`.
    fn compose(&self, g: [f64; 4]) -> Self {
        let mut d = *self;
        d.c[0] = 0.0;
        let d2 = d * d;
        let d3 = d2 * d;
        let mut out = Self::constant(g[0]);
        for k in 1..10 {
            out.c[k] = g[1] * d.c[k] + 0.5 * g[2] * d2.c[k] + g[3] / 6.0 * d3.c[k];
        }
        out
    }

    pub fn recip(&self) -> Self {
        let u = self.c[0];
        let r = 1.0 / u;
        self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r])
    }

    pub fn sqrt(&self) -> Self {
        let u = self.c[0];
        let s = u.sqrt();
        self.compose([s, 0.5 / s, -0.25 / (u * s), 0.375 / (u * u * s)])
    }

    pub fn ln(&self) -> Self {
        let r = 1.0 / self.c[0];
        self.compose([self.c[0].ln(), r, -r * r, 2.0 * r * r * r])
    }

    pub fn asin(&self) -> Self {
        let u = self.c[0];
        let q = 1.0 - u * u;
        let s = q.sqrt();
        self.compose([
            u.asin(),
            1.0 / s,
            u / (q * s),
            (1.0 + 2.0 * u * u) / (q * q * s),
        ])
    }

    pub fn atan(&self) -> Self {
        let u = self.c[0];
        let q = 1.0 + u * u;
        self.compose([
            u.atan(),
            1.0 / q,
            -2.0 * u / (q * q),
            (6.0 * u * u - 2.0) / (q * q * q),
        ])
    }

    pub fn square(&self) -> Self {
        *self * *self
    }
}

fn factorial(n: usize) -> f64 {
    [1.0, 1.0, 2.0, 6.0][n]
}

impl Add for Series {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for k in 0..10 {
            self.c[k] += o.c[k];
        }
        self
    }
}

impl Sub for Series {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for k in 0..10 {
            self.c[k] -= o.c[k];
        }
        self
    }
}

impl Neg for Series {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in &mut self.c {
            *c = -*c;
        }
        self
    }
}

impl Mul for Series {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; 10];
        for (a, &(ia, ja)) in EXP.iter().enumerate() {
            if self.c[a] == 0.0 {
                continue;
            }
            for (b, &(ib, jb)) in EXP.iter().enumerate() {
                let (i, j) = (ia + ib, ja + jb);
                if i + j <= 3 {
                    c[slot(i, j)] += self.c[a] * o.c[b];
                }
            }
        }
        Self { c }
    }
}

impl Div for Series {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl Add<f64> for Series {
    type Output = Self;
    fn add(mut self, v: f64) -> Self {
        self.c[0] += v;
        self
    }
}

impl Sub<f64> for Series {
    type Output = Self;
    fn sub(mut self, v: f64) -> Self {
        self.c[0] -= v;
        self
    }
}

impl Mul<f64> for Series {
    type Output = Self;
    fn mul(mut self, v: f64) -> Self {
        for c in &mut self.c {
            *c *= v;
        }
        self
    }
}

impl Mul<Series> for f64 {
    type Output = Series;
    fn mul(self, s: Series) -> Series {
        s * self
    }
}

impl Sub<Series> for f64 {
    type Output = Series;
    fn sub(self, s: Series) -> Series {
        -s + self
    }
}

impl Div<f64> for Series {
    type Output = Self;
    fn div(self, v: f64) -> Self {
        self * (1.0 / v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check<F: Fn(Series, Series) -> Series>(f: F, x0: f64, y0: f64, tol: f64) {
        let s = f(Series::var_x(x0), Series::var_y(y0));
        let ev = |x: f64, y: f64| f(Series::constant(x), Series::constant(y)).value();
        let h = 1e-3;
        let fx = (ev(x0 + h, y0) - ev(x0 - h, y0)) / (2.0 * h);
        let fy = (ev(x0, y0 + h) - ev(x0, y0 - h)) / (2.0 * h);
        let fxx = (ev(x0 + h, y0) - 2.0 * ev(x0, y0) + ev(x0 - h, y0)) / (h * h);
        let fxy = (ev(x0 + h, y0 + h) - ev(x0 + h, y0 - h) - ev(x0 - h, y0 + h)
            + ev(x0 - h, y0 - h))
            / (4.0 * h * h);
        let fyyy = (ev(x0, y0 + 2.0 * h) - 2.0 * ev(x0, y0 + h) + 2.0 * ev(x0, y0 - h)
            - ev(x0, y0 - 2.0 * h))
            / (2.0 * h * h * h);
        let j = s.jet3();
        for (a, b) in [
            (j.fx, fx),
            (j.fy, fy),
            (j.fxx, fxx),
            (j.fxy, fxy),
            (j.fyyy, fyyy),
        ] {
            assert!((a - b).abs() <= tol * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn polynomial_product_is_exact() {
        // (x + 2y)^3 at (1, -1): f = -1, fxxx = 6, fxxy = 12, fxyy = 24, fyyy = 48
        let x = Series::var_x(1.0);
        let y = Series::var_y(-1.0);
        let p = x + 2.0 * y;
        let j = (p * p * p).jet3();
        assert_eq!(j.f, -1.0);
        assert_eq!(j.fxxx, 6.0);
        assert_eq!(j.fxxy, 12.0);
        assert_eq!(j.fxyy, 24.0);
        assert_eq!(j.fyyy, 48.0);
    }

    #[test]
    fn elementary_functions_match_finite_differences() {
        fd_check(|x, y| (x * x + y * y).ln(), 0.7, 1.3, 1e-5);
        fd_check(|x, y| (y * 0.4 / (x * x + y * y)).asin(), 0.2, 1.1, 1e-5);
        fd_check(|x, y| (x * y + 1.0).sqrt().atan(), 0.5, 0.8, 1e-5);
        fd_check(|x, y| x / (x * x + y * y), -0.3, 0.9, 1e-5);
    }

    #[test]
    fn jet_roundtrip() {
        let j = Jet3 {
            f: 1.0,
            fx: 2.0,
            fy: 3.0,
            fxx: 4.0,
            fxy: 5.0,
            fyy: 6.0,
            fxxx: 7.0,
            fxxy: 8.0,
            fxyy: 9.0,
            fyyy: 10.0,
        };
        assert_eq!(Series::from_jet3(&j).jet3(), j);
    }
}
