//! Dirichlet problem for the minimal-surface equation on rectangles.
//!
//! The equation is discretised in divergence form,
//! `div(∇f / √(1 + y²|∇f|²)) = 0`, with fluxes evaluated at face centres
//! (`y` taken at the face) and differenced centrally. The tangential
//! derivative on a face is the mean of the two adjacent centred differences.
//! The resulting 9-point stencil is second-order consistent.

pub mod banded;

use std::fmt;
use std::str::FromStr;

use crate::ambient::DomainPoint;
use crate::error::{Error, Result};
use crate::exec::{max_abs, Exec};
use crate::sampling::Rect;
use crate::shape::GraphField;

use banded::BandMatrix;

/// Nodal values on a uniform `nx × ny` grid over `[x0, x1] × [y0, y1]`,
/// stored row-major in `y` (`values[j * nx + i]` sits at `(x_i, y_j)`).
/// Boundary nodes carry the Dirichlet data.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    rect: Rect,
    nx: usize,
    ny: usize,
    values: Vec<f64>,
}

impl GridField {
    pub fn new(rect: Rect, nx: usize, ny: usize, values: Vec<f64>) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidGrid(format!(
                "need nx, ny >= 3, got {nx} x {ny}"
            )));
        }
        if values.len() != nx * ny {
            return Err(Error::InvalidGrid(format!(
                "expected {} values, got {}",
                nx * ny,
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value at index {k}")));
        }
        Ok(Self {
            rect,
            nx,
            ny,
            values,
        })
    }

    pub fn from_fn(rect: Rect, nx: usize, ny: usize, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                values.push(f(
                    node(rect.x0, rect.x1, nx, i),
                    node(rect.y0, rect.y1, ny, j),
                ));
            }
        }
        Self::new(rect, nx, ny, values)
    }

    /// Samples `field` at every node.
    pub fn sample(rect: Rect, nx: usize, ny: usize, field: &dyn GraphField) -> Result<Self> {
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let p =
                    DomainPoint::new(node(rect.x0, rect.x1, nx, i), node(rect.y0, rect.y1, ny, j))?;
                if !field.admits(p) {
                    return Err(Error::DomainViolation {
                        context: "grid sample".into(),
                        x: p.x(),
                        y: p.y(),
                    });
                }
                values.push(field.value(p)?);
            }
        }
        Self::new(rect, nx, ny, values)
    }

    /// Dirichlet data traced from `field` on the boundary, zero inside.
    pub fn boundary_trace(
        rect: Rect,
        nx: usize,
        ny: usize,
        field: &dyn GraphField,
    ) -> Result<Self> {
        let mut g = Self::new(rect, nx, ny, vec![0.0; nx * ny])?;
        for k in g.boundary_indices() {
            let (i, j) = (k % nx, k / nx);
            let p = DomainPoint::new(g.x(i), g.y(j))?;
            if !field.admits(p) {
                return Err(Error::DomainViolation {
                    context: "boundary trace".into(),
                    x: p.x(),
                    y: p.y(),
                });
            }
            g.values[k] = field.value(p)?;
        }
        Ok(g)
    }

    /// Dirichlet data from explicit edge lists. `bottom` and `top` hold `nx`
    /// values including the corners; `left` and `right` hold `ny` values and
    /// must agree with them at the corners.
    pub fn from_edges(
        rect: Rect,
        bottom: &[f64],
        top: &[f64],
        left: &[f64],
        right: &[f64],
    ) -> Result<Self> {
        let (nx, ny) = (bottom.len(), left.len());
        if top.len() != nx || right.len() != ny {
            return Err(Error::InvalidGrid(format!(
                "edge lengths differ: bottom {nx}, top {}, left {ny}, right {}",
                top.len(),
                right.len()
            )));
        }
        let mut g = Self::new(rect, nx, ny, vec![0.0; nx * ny])?;
        let corners = [
            (bottom[0], left[0]),
            (bottom[nx - 1], right[0]),
            (top[0], left[ny - 1]),
            (top[nx - 1], right[ny - 1]),
        ];
        for (a, b) in corners {
            if (a - b).abs() > 1e-12 * (1.0 + a.abs()) {
                return Err(Error::InvalidGrid(format!(
                    "corner values disagree: {a} vs {b}"
                )));
            }
        }
        for j in 0..ny {
            g.values[j * nx] = left[j];
            g.values[j * nx + nx - 1] = right[j];
        }
        g.values[..nx].copy_from_slice(bottom);
        g.values[(ny - 1) * nx..].copy_from_slice(top);
        if let Some(v) = g.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite boundary value {v}")));
        }
        Ok(g)
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn x(&self, i: usize) -> f64 {
        node(self.rect.x0, self.rect.x1, self.nx, i)
    }

    pub fn y(&self, j: usize) -> f64 {
        node(self.rect.y0, self.rect.y1, self.ny, j)
    }

    pub fn hx(&self) -> f64 {
        self.rect.width() / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        self.rect.height() / (self.ny - 1) as f64
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1
    }

    pub fn boundary_mask(&self) -> Vec<bool> {
        (0..self.nx * self.ny)
            .map(|k| self.is_boundary(k % self.nx, k / self.nx))
            .collect()
    }

    /// Flat indices of the boundary nodes in storage order.
    pub fn boundary_indices(&self) -> Vec<usize> {
        (0..self.nx * self.ny)
            .filter(|&k| self.is_boundary(k % self.nx, k / self.nx))
            .collect()
    }

    pub fn boundary_values(&self) -> Vec<f64> {
        self.boundary_indices()
            .into_iter()
            .map(|k| self.values[k])
            .collect()
    }

    fn interior_dims(&self) -> (usize, usize) {
        (self.nx - 2, self.ny - 2)
    }

    fn interior_to_flat(&self, k: usize) -> usize {
        let mx = self.nx - 2;
        (k / mx + 1) * self.nx + k % mx + 1
    }

    pub fn interior_values(&self) -> Vec<f64> {
        let (mx, my) = self.interior_dims();
        (0..mx * my)
            .map(|k| self.values[self.interior_to_flat(k)])
            .collect()
    }

    fn set_interior(&mut self, v: &[f64]) {
        for (k, &x) in v.iter().enumerate() {
            let f = self.interior_to_flat(k);
            self.values[f] = x;
        }
    }

    /// Same grid shape and boundary, new values everywhere.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.rect, self.nx, self.ny, values)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest amount by which an interior value leaves the range of the
    /// boundary data; zero when the discrete maximum principle holds.
    pub fn max_principle_excess(&self) -> f64 {
        let b = self.boundary_values();
        let lo = b.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        self.interior_values()
            .iter()
            .fold(0.0_f64, |m, &v| m.max(lo - v).max(v - hi))
    }

    /// Maximum nodal error against `field`.
    pub fn max_error(&self, field: &dyn GraphField) -> Result<f64> {
        let exact = Self::sample(self.rect, self.nx, self.ny, field)?;
        Ok(self.max_abs_diff(&exact))
    }

    pub fn to_csv(&self) -> String {
        let r = self.rect;
        let mut s = format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{},{}\n",
            r.x0, r.x1, r.y0, r.y1, self.nx, self.ny
        );
        for row in self.values.chunks(self.nx) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty grid file".into()))?;
        let h: Vec<&str> = header.split(',').map(str::trim).collect();
        if h.len() != 6 {
            return Err(Error::Parse(format!(
                "grid header needs 6 fields, got {}",
                h.len()
            )));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        let rect = Rect::new(num(h[0])?, num(h[1])?, num(h[2])?, num(h[3])?)?;
        let (nx, ny) = (int(h[4])?, int(h[5])?);
        let mut values = Vec::with_capacity(nx * ny);
        let mut rows = 0;
        for line in lines {
            let row: Vec<f64> = line
                .split(',')
                .map(|s| num(s.trim()))
                .collect::<Result<_>>()?;
            if row.len() != nx {
                return Err(Error::Parse(format!(
                    "row {rows} has {} values, expected {nx}",
                    row.len()
                )));
            }
            values.extend(row);
            rows += 1;
        }
        if rows != ny {
            return Err(Error::Parse(format!("expected {ny} rows, got {rows}")));
        }
        Self::new(rect, nx, ny, values)
    }
}

fn node(a: f64, b: f64, n: usize, i: usize) -> f64 {
    if i == n - 1 {
        b
    } else {
        a + (b - a) * i as f64 / (n - 1) as f64
    }
}

/// Outcome of a Dirichlet solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    /// Passes of the outer loop, counting the pass that checks convergence.
    pub iterations: usize,
    /// Max-norm of the discrete residual at interior nodes.
    pub final_residual_norm: f64,
    /// Accepted Newton step lengths, one per Newton step.
    pub damping: Vec<f64>,
    /// Area-descent steps taken where no damped Newton step reduced the
    /// residual.
    pub descent_steps: usize,
    pub converged: bool,
    pub tol: f64,
}

impl SolveReport {
    pub fn to_kv(&self) -> String {
        let damping: Vec<String> = self.damping.iter().map(|t| format!("{t:.16e}")).collect();
        format!(
            "converged={}\niterations={}\nfinal_residual_norm={:.16e}\ntol={:.16e}\ndescent_steps={}\ndamping={}\n",
            self.converged,
            self.iterations,
            self.final_residual_norm,
            self.tol,
            self.descent_steps,
            damping.join(",")
        )
    }
}

impl FromStr for SolveReport {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut r = SolveReport {
            iterations: 0,
            final_residual_norm: f64::NAN,
            damping: Vec::new(),
            descent_steps: 0,
            converged: false,
            tol: f64::NAN,
        };
        let bad = |k: &str, v: &str| Error::Parse(format!("bad value for {k}: {v:?}"));
        for line in s.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "converged" => r.converged = v.parse().map_err(|_| bad(k, v))?,
                "iterations" => r.iterations = v.parse().map_err(|_| bad(k, v))?,
                "final_residual_norm" => {
                    r.final_residual_norm = v.parse().map_err(|_| bad(k, v))?
                }
                "tol" => r.tol = v.parse().map_err(|_| bad(k, v))?,
                "descent_steps" => r.descent_steps = v.parse().map_err(|_| bad(k, v))?,
                "damping" if v.is_empty() => r.damping.clear(),
                "damping" => {
                    r.damping = v
                        .split(',')
                        .map(|t| t.parse().map_err(|_| bad(k, t)))
                        .collect::<Result<_>>()?
                }
                _ => return Err(Error::Parse(format!("unknown report key {k:?}"))),
            }
        }
        Ok(r)
    }
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} after {} iterations, residual {:.3e} (tol {:.1e}), {} descent steps",
            if self.converged {
                "converged"
            } else {
                "not converged"
            },
            self.iterations,
            self.final_residual_norm,
            self.tol,
            self.descent_steps
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub exec: Exec,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 50,
            exec: Exec::default(),
        }
    }
}

/// Face flux `p / S` with `S = √(1 + y²(p² + q²))` and its partials in the
/// normal (`p`) and tangential (`q`) derivative.
#[inline]
fn face_flux(p: f64, q: f64, y: f64) -> (f64, f64, f64) {
    let y2 = y * y;
    let s2 = 1.0 + y2 * (p * p + q * q);
    let s = s2.sqrt();
    let s3 = s2 * s;
    (p / s, (1.0 + y2 * q * q) / s3, -y2 * p * q / s3)
}

/// Residual at interior node `(i, j)` and, optionally, its derivatives with
/// respect to the 3×3 neighbourhood, `d[dj + 1][di + 1]`.
fn node_residual(g: &GridField, i: usize, j: usize, want_grad: bool) -> (f64, [[f64; 3]; 3]) {
    let (hx, hy) = (g.hx(), g.hy());
    let u = |di: isize, dj: isize| g.get((i as isize + di) as usize, (j as isize + dj) as usize);
    let yj = g.y(j);
    let mut d = [[0.0; 3]; 3];
    let mut add = |di: isize, dj: isize, v: f64| d[(dj + 1) as usize][(di + 1) as usize] += v;
    let mut r = 0.0;

    for side in [-1isize, 1] {
        // x-face between columns i and i + side
        let (a, b) = if side > 0 { (0, 1) } else { (-1, 0) };
        let p = (u(b, 0) - u(a, 0)) / hx;
        let q = (u(a, 1) - u(a, -1) + u(b, 1) - u(b, -1)) / (4.0 * hy);
        let (fl, dp, dq) = face_flux(p, q, yj);
        let sgn = side as f64 / hx;
        r += sgn * fl;
        if want_grad {
            add(b, 0, sgn * dp / hx);
            add(a, 0, -sgn * dp / hx);
            for c in [a, b] {
                add(c, 1, sgn * dq / (4.0 * hy));
                add(c, -1, -sgn * dq / (4.0 * hy));
            }
        }

        // y-face between rows j and j + side
        let q = (u(0, b) - u(0, a)) / hy;
        let p = (u(1, a) - u(-1, a) + u(1, b) - u(-1, b)) / (4.0 * hx);
        let yf = yj + 0.5 * side as f64 * hy;
        let (fl, dq, dp) = face_flux(q, p, yf);
        let sgn = side as f64 / hy;
        r += sgn * fl;
        if want_grad {
            add(0, b, sgn * dq / hy);
            add(0, a, -sgn * dq / hy);
            for c in [a, b] {
                add(1, c, sgn * dp / (4.0 * hx));
                add(-1, c, -sgn * dp / (4.0 * hx));
            }
        }
    }
    (r, d)
}

/// Discrete residual `div(∇f/√(1 + y²|∇f|²))` at interior nodes, ordered
/// row-major in `y`. It equals the pointwise minimal-surface residual divided
/// by `(1 + y²|∇f|²)^{3/2}`, up to the truncation error of the stencil.
pub fn assemble_residual(gf: &GridField) -> Vec<f64> {
    assemble_residual_with(gf, Exec::default())
}

pub fn assemble_residual_with(gf: &GridField, exec: Exec) -> Vec<f64> {
    let (mx, my) = gf.interior_dims();
    exec.map(mx * my, |k| {
        node_residual(gf, k % mx + 1, k / mx + 1, false).0
    })
}

/// Jacobian of [`assemble_residual`] with respect to the interior values.
pub fn assemble_jacobian_with(gf: &GridField, exec: Exec) -> BandMatrix {
    let (mx, my) = gf.interior_dims();
    let rows = exec.map(mx * my, |k| {
        node_residual(gf, k % mx + 1, k / mx + 1, true).1
    });
    let bw = mx + 1;
    let mut jac = BandMatrix::zeros(mx * my, bw, bw);
    for (k, d) in rows.iter().enumerate() {
        let (i, j) = (k % mx, k / mx);
        for (dj, row) in d.iter().enumerate() {
            for (di, &v) in row.iter().enumerate() {
                let (ii, jj) = ((i + di) as isize - 1, (j + dj) as isize - 1);
                if v != 0.0 && (0..mx as isize).contains(&ii) && (0..my as isize).contains(&jj) {
                    jac.add(k, jj as usize * mx + ii as usize, v);
                }
            }
        }
    }
    jac
}

/// Harmonic extension of the boundary data: solves the 5-point flat Laplace
/// equation for the interior. The unknown is the deviation from the mean
/// boundary value, so constant data is reproduced exactly.
pub fn harmonic_extension(gf: &GridField) -> Result<GridField> {
    let (mx, my) = gf.interior_dims();
    let b = gf.boundary_values();
    let mean = crate::exec::pairwise_sum(&b) / b.len() as f64;
    let (cx, cy) = (1.0 / (gf.hx() * gf.hx()), 1.0 / (gf.hy() * gf.hy()));
    let mut a = BandMatrix::zeros(mx * my, mx, mx);
    let mut rhs = vec![0.0; mx * my];
    for (k, r) in rhs.iter_mut().enumerate() {
        let (i, j) = (k % mx + 1, k / mx + 1);
        a.add(k, k, -2.0 * (cx + cy));
        for (di, dj, c) in [(-1isize, 0isize, cx), (1, 0, cx), (0, -1, cy), (0, 1, cy)] {
            let (ii, jj) = ((i as isize + di) as usize, (j as isize + dj) as usize);
            if gf.is_boundary(ii, jj) {
                *r -= c * (gf.get(ii, jj) - mean);
            } else {
                a.add(k, (jj - 1) * mx + ii - 1, c);
            }
        }
    }
    a.solve_in_place(&mut rhs)
        .map_err(|e| Error::InvalidGrid(format!("flat Laplace system singular at row {}", e.0)))?;
    let mut out = gf.clone();
    let v: Vec<f64> = rhs.iter().map(|d| d + mean).collect();
    out.set_interior(&v);
    Ok(out)
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solves the Dirichlet problem with the boundary values of `gf`; interior
/// values of `gf` are ignored.
///
/// Damped Newton from the harmonic extension; each step is halved up to 20
/// times until the residual 2-norm decreases (Armijo constant `1e-4`). If no
/// step length is accepted, one explicit step of area-gradient descent is
/// taken instead.
pub fn solve_dirichlet(gf: &GridField, opts: &SolveOptions) -> Result<(GridField, SolveReport)> {
    const ARMIJO: f64 = 1e-4;
    const MAX_HALVINGS: usize = 20;
    let exec = opts.exec;
    let mut u = harmonic_extension(gf)?;
    let mut report = SolveReport {
        iterations: 0,
        final_residual_norm: f64::INFINITY,
        damping: Vec::new(),
        descent_steps: 0,
        converged: false,
        tol: opts.tol,
    };
    let tau = 0.2 * gf.hx().min(gf.hy()).powi(2);
    let mut r = assemble_residual_with(&u, exec);
    loop {
        report.iterations += 1;
        report.final_residual_norm = max_abs(&r);
        if report.final_residual_norm <= opts.tol {
            report.converged = true;
            return Ok((u, report));
        }
        if report.iterations >= opts.max_iter {
            return Err(Error::NonConvergence(Box::new(report)));
        }
        let jac = assemble_jacobian_with(&u, exec);
        let mut delta: Vec<f64> = r.iter().map(|v| -v).collect();
        if jac.solve_in_place(&mut delta).is_err() || delta.iter().any(|d| !d.is_finite()) {
            return Err(Error::SingularJacobian {
                iterate: Box::new(u),
                report: Box::new(report),
            });
        }
        let base = u.interior_values();
        let r0 = norm2(&r);
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<f64> = base.iter().zip(&delta).map(|(b, d)| b + t * d).collect();
            let mut cand = u.clone();
            cand.set_interior(&trial);
            let rc = assemble_residual_with(&cand, exec);
            if norm2(&rc) <= (1.0 - ARMIJO * t) * r0 {
                accepted = Some((cand, rc));
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some((cand, rc)) => {
                report.damping.push(t);
                u = cand;
                r = rc;
            }
            None => {
                // the L² gradient of area is minus the flux divergence
                let step: Vec<f64> = base.iter().zip(&r).map(|(b, ri)| b + tau * ri).collect();
                u.set_interior(&step);
                r = assemble_residual_with(&u, exec);
                report.descent_steps += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SolutionSpec;

    fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Rect {
        Rect::new(x0, x1, y0, y1).unwrap()
    }

    #[test]
    fn rejects_small_or_mismatched_grids() {
        let r = rect(0.0, 1.0, 1.0, 2.0);
        assert!(GridField::new(r, 2, 5, vec![0.0; 10]).is_err());
        assert!(GridField::new(r, 3, 3, vec![0.0; 8]).is_err());
        assert!(GridField::new(r, 3, 3, vec![f64::NAN; 9]).is_err());
    }

    #[test]
    fn plane_residual_is_rounding_only() {
        let spec = SolutionSpec::plane(1.7, -0.3);
        let g = GridField::sample(rect(-1.0, 2.0, 0.2, 3.0), 21, 17, &spec).unwrap();
        assert!(max_abs(&assemble_residual(&g)) < 1e-11);
    }

    #[test]
    fn arcsin_residual_is_second_order() {
        let spec = SolutionSpec::arcsin_y(0.5, 0.0).unwrap();
        let r = rect(1.0, 2.0, 0.5, 1.5);
        let e: Vec<f64> = [17, 33, 65]
            .iter()
            .map(|&n| {
                max_abs(&assemble_residual(
                    &GridField::sample(r, n, n, &spec).unwrap(),
                ))
            })
            .collect();
        for w in e.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio}, {e:?}");
        }
    }

    #[test]
    fn jacobian_matches_directional_derivative() {
        let spec = SolutionSpec::funnel(1.0, 0.0);
        let base = GridField::sample(rect(1.0, 2.0, 1.0, 2.0), 9, 7, &spec).unwrap();
        let (mx, my) = (7, 5);
        let bump: Vec<f64> = (0..mx * my)
            .map(|k| ((k * 7919) % 13) as f64 / 13.0 - 0.5)
            .collect();
        let jac = assemble_jacobian_with(&base, Exec::Sequential);
        let jb = jac.mul_vec(&bump);
        let eps = 1e-6;
        let shifted = |s: f64| {
            let mut g = base.clone();
            let v: Vec<f64> = base
                .interior_values()
                .iter()
                .zip(&bump)
                .map(|(a, b)| a + s * b)
                .collect();
            g.set_interior(&v);
            assemble_residual(&g)
        };
        let (rp, rm) = (shifted(eps), shifted(-eps));
        for k in 0..mx * my {
            let fd = (rp[k] - rm[k]) / (2.0 * eps);
            assert!(
                (fd - jb[k]).abs() < 1e-5 * (1.0 + fd.abs()),
                "k={k}: {fd} vs {}",
                jb[k]
            );
        }
    }

    #[test]
    fn constant_boundary_solves_in_one_pass() {
        let r = rect(0.0, 1.0, 1.0, 2.0);
        let g = GridField::from_fn(r, 9, 9, |_, _| 2.5).unwrap();
        let (sol, rep) = solve_dirichlet(&g, &SolveOptions::default()).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(rep.converged);
        assert!(sol.values().iter().all(|&v| v == 2.5));
    }

    #[test]
    fn funnel_is_recovered_to_second_order() {
        let spec = SolutionSpec::funnel(1.0, 0.0);
        let r = rect(1.0, 2.0, 1.0, 2.0);
        let errs: Vec<f64> = [9, 17, 33]
            .iter()
            .map(|&n| {
                let g = GridField::boundary_trace(r, n, n, &spec).unwrap();
                let (sol, rep) = solve_dirichlet(&g, &SolveOptions::default()).unwrap();
                assert!(rep.converged && rep.final_residual_norm <= rep.tol);
                sol.max_error(&spec).unwrap()
            })
            .collect();
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((1.7..2.3).contains(&order), "{errs:?}");
        }
    }

    #[test]
    fn solution_is_invariant_under_x_translation() {
        let spec = SolutionSpec::arcsin_y(0.5, 0.0).unwrap();
        let solve = |x0: f64| {
            let g = GridField::boundary_trace(rect(x0, x0 + 1.0, 0.5, 1.5), 17, 17, &spec).unwrap();
            solve_dirichlet(&g, &SolveOptions::default()).unwrap().0
        };
        let (a, b) = (solve(1.0), solve(-3.25));
        assert!(a
            .values()
            .iter()
            .zip(b.values())
            .all(|(p, q)| (p - q).abs() < 1e-9));
    }

    #[test]
    fn max_iter_exhaustion_is_reported() {
        let spec = SolutionSpec::arcsin_y(0.5, 0.0).unwrap();
        let g = GridField::boundary_trace(rect(1.0, 2.0, 0.5, 1.5), 17, 17, &spec).unwrap();
        let opts = SolveOptions {
            max_iter: 1,
            ..Default::default()
        };
        match solve_dirichlet(&g, &opts) {
            Err(Error::NonConvergence(rep)) => {
                assert!(!rep.converged);
                assert_eq!(rep.iterations, 1);
            }
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn strategies_produce_identical_solutions() {
        let spec = SolutionSpec::funnel(0.7, 0.1);
        let g = GridField::boundary_trace(rect(1.0, 2.0, 1.0, 2.0), 17, 13, &spec).unwrap();
        let solve = |exec| {
            solve_dirichlet(
                &g,
                &SolveOptions {
                    exec,
                    ..Default::default()
                },
            )
            .unwrap()
        };
        let (a, ra) = solve(Exec::Sequential);
        let (b, rb) = solve(Exec::Parallel);
        assert_eq!(a, b);
        assert_eq!(ra, rb);
    }

    #[test]
    fn edges_must_agree_at_corners() {
        let r = rect(0.0, 1.0, 1.0, 2.0);
        let e = [0.0, 1.0, 2.0];
        assert!(GridField::from_edges(r, &e, &e, &e, &e).is_err());
        let g = GridField::from_edges(
            r,
            &[0.0, 0.5, 1.0],
            &[2.0, 2.5, 3.0],
            &[0.0, 1.0, 2.0],
            &[1.0, 2.0, 3.0],
        )
        .unwrap();
        assert_eq!(g.get(1, 2), 2.5);
        assert_eq!(g.get(2, 1), 2.0);
    }

    #[test]
    fn csv_and_report_round_trip() {
        let spec = SolutionSpec::funnel(1.0, 0.3);
        let g = GridField::sample(rect(0.1, 1.3, 0.7, 2.9), 5, 4, &spec).unwrap();
        let back = GridField::from_csv(&g.to_csv()).unwrap();
        assert!(g
            .values()
            .iter()
            .zip(back.values())
            .all(|(a, b)| a.to_bits() == b.to_bits()));
        assert_eq!(g, back);

        let rep = SolveReport {
            iterations: 4,
            final_residual_norm: 3.1e-12,
            damping: vec![1.0, 0.5, 1.0],
            descent_steps: 0,
            converged: true,
            tol: 1e-10,
        };
        assert_eq!(rep.to_kv().parse::<SolveReport>().unwrap(), rep);
    }
}
