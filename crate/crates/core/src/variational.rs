//! Area functional, perturbation witnesses of area minimality, and the
//! harmonicity statements for minimal graphs.
//!
//! The area element of a graph is `√(EG - F²) dx dy = w dx dy` with
//! `w = √(1 + y²|∇f|²) / y²`.

use std::f64::consts::PI;
use std::fmt;

use crate::ambient::{geodesic_curvature_graph_curve, DomainPoint};
use crate::error::{Error, Result};
use crate::exec::{pairwise_sum, Exec};
use crate::pde::GridField;
use crate::sampling::Rect;
use crate::shape::{first_forms, w_factor, GraphField, Jet2};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    /// Composite Simpson on `n × n` intervals of an analytic field.
    Simpson,
    /// Cell midpoint rule on a grid field, gradients from the cell corners.
    GridMidpoint,
}

impl fmt::Display for Quadrature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quadrature::Simpson => "simpson",
            Quadrature::GridMidpoint => "grid-midpoint",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaReport {
    pub area: f64,
    pub rule: Quadrature,
    /// Intervals per direction (Simpson) or cells per direction as `(nx-1)`.
    pub resolution: usize,
    /// Richardson estimate from the rule on the half-resolution grid; NaN
    /// when the grid has an odd number of cells in some direction.
    pub estimated_error: f64,
}

/// Area of the graph of `field` over `region`, composite Simpson with `n`
/// intervals per direction (rounded up to even, at least 2).
pub fn area(field: &dyn GraphField, region: Rect, n: usize) -> Result<AreaReport> {
    area_with(field, region, n, Exec::default())
}

pub fn area_with(field: &dyn GraphField, region: Rect, n: usize, exec: Exec) -> Result<AreaReport> {
    let n = (n.max(2) + 1) & !1;
    let m = n + 1;
    let dens = exec.try_map(m * m, |k| {
        let p = region.at((k % m) as f64 / n as f64, (k / m) as f64 / n as f64);
        if !field.admits(p) {
            return Err(Error::DomainViolation {
                context: "area".into(),
                x: p.x(),
                y: p.y(),
            });
        }
        Ok(w_factor(p, &field.jet2(p)?))
    })?;
    let fine = simpson2d(&dens, m, 1, region);
    let coarse = simpson2d(&dens, m, 2, region);
    Ok(AreaReport {
        area: fine,
        rule: Quadrature::Simpson,
        resolution: n,
        estimated_error: (fine - coarse).abs() / 15.0,
    })
}

/// Simpson on the nodes `0, stride, 2 stride, …` of an `m × m` table.
fn simpson2d(vals: &[f64], m: usize, stride: usize, region: Rect) -> f64 {
    let n = (m - 1) / stride;
    let weight = |i: usize| -> f64 {
        if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        }
    };
    let rows: Vec<f64> = (0..=n)
        .map(|j| {
            let terms: Vec<f64> = (0..=n)
                .map(|i| weight(i) * vals[j * stride * m + i * stride])
                .collect();
            weight(j) * pairwise_sum(&terms)
        })
        .collect();
    let h = |len: f64| len / n as f64 / 3.0;
    pairwise_sum(&rows) * h(region.width()) * h(region.height())
}

/// Area of a grid field by the cell midpoint rule.
pub fn area_grid(gf: &GridField) -> AreaReport {
    area_grid_with(gf, Exec::default())
}

pub fn area_grid_with(gf: &GridField, exec: Exec) -> AreaReport {
    let fine = midpoint_area(gf, 1, exec);
    let coarsenable = (gf.nx() - 1).is_multiple_of(2)
        && (gf.ny() - 1).is_multiple_of(2)
        && gf.nx() >= 5
        && gf.ny() >= 5;
    let estimated_error = if coarsenable {
        (fine - midpoint_area(gf, 2, exec)).abs() / 3.0
    } else {
        f64::NAN
    };
    AreaReport {
        area: fine,
        rule: Quadrature::GridMidpoint,
        resolution: gf.nx() - 1,
        estimated_error,
    }
}

fn midpoint_area(gf: &GridField, stride: usize, exec: Exec) -> f64 {
    let cx = (gf.nx() - 1) / stride;
    let cy = (gf.ny() - 1) / stride;
    let (hx, hy) = (gf.hx() * stride as f64, gf.hy() * stride as f64);
    let cells = exec.map(cx * cy, |k| {
        let (i, j) = ((k % cx) * stride, (k / cx) * stride);
        let (u00, u10) = (gf.get(i, j), gf.get(i + stride, j));
        let (u01, u11) = (gf.get(i, j + stride), gf.get(i + stride, j + stride));
        let p = (u10 + u11 - u00 - u01) / (2.0 * hx);
        let q = (u01 + u11 - u00 - u10) / (2.0 * hy);
        let y = 0.5 * (gf.y(j) + gf.y(j + stride));
        (1.0 + y * y * (p * p + q * q)).sqrt() / (y * y)
    });
    pairwise_sum(&cells) * hx * hy
}

/// Sine bumps `sin(kπ s) sin(lπ t)` in the relative coordinates of the grid,
/// vanishing on its boundary. `(2, 1)` and `(1, 2)` are antisymmetric.
pub const STANDARD_BUMP_MODES: [(u32, u32); 5] = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)];

pub fn sine_bump(gf: &GridField, k: u32, l: u32) -> GridField {
    let r = gf.rect();
    GridField::from_fn(r, gf.nx(), gf.ny(), |x, y| {
        (k as f64 * PI * (x - r.x0) / r.width()).sin()
            * (l as f64 * PI * (y - r.y0) / r.height()).sin()
    })
    .expect("same shape as a valid grid")
}

pub fn standard_bumps(gf: &GridField) -> Vec<GridField> {
    STANDARD_BUMP_MODES
        .iter()
        .map(|&(k, l)| sine_bump(gf, k, l))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaComparisonRow {
    pub eps: f64,
    pub area: f64,
    /// `A(f + ε b) - A(f)`.
    pub diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AreaComparison {
    pub base: AreaReport,
    pub rows: Vec<AreaComparisonRow>,
}

impl AreaComparison {
    /// `|A(f+εb) - A(f-εb)|` and `|A(f+εb) + A(f-εb) - 2A(f)|` for every
    /// `ε > 0` whose negative was also evaluated.
    pub fn symmetric_parts(&self) -> Vec<(f64, f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.eps > 0.0)
            .filter_map(|p| {
                let m = self.rows.iter().find(|r| r.eps == -p.eps)?;
                Some((p.eps, (p.diff - m.diff).abs(), (p.diff + m.diff).abs()))
            })
            .collect()
    }
}

/// Area differences `A(f + ε b) - A(f)` on the grid of `f`.
pub fn area_comparison(f: &GridField, bump: &GridField, eps: &[f64]) -> Result<AreaComparison> {
    if (f.rect(), f.nx(), f.ny()) != (bump.rect(), bump.nx(), bump.ny()) {
        return Err(Error::InvalidGrid("bump and field grids differ".into()));
    }
    let scale = bump.values().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let edge = bump
        .boundary_values()
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if edge > 1e-12 * scale {
        return Err(Error::BumpNotVanishing(edge));
    }
    let base = area_grid(f);
    let rows = eps
        .iter()
        .map(|&e| {
            let v: Vec<f64> = f
                .values()
                .iter()
                .zip(bump.values())
                .map(|(a, b)| a + e * b)
                .collect();
            let a = area_grid(&f.with_values(v)?).area;
            Ok(AreaComparisonRow {
                eps: e,
                area: a,
                diff: a - base.area,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AreaComparison { base, rows })
}

pub fn flat_laplacian(j: &Jet2) -> f64 {
    j.fxx + j.fyy
}

/// `h^{ij} ∂ⱼf √det h` at a point; `det h = w²`.
fn induced_flux(p: DomainPoint, j: &Jet2) -> [f64; 2] {
    let (e, f, g) = first_forms(p, j);
    let det = e * g - f * f;
    let sq = det.sqrt();
    [
        sq * (g * j.fx - f * j.fy) / det,
        sq * (e * j.fy - f * j.fx) / det,
    ]
}

/// Laplace-Beltrami of `f` in the induced metric `h = φ*g`,
/// `(1/√det h) ∂ᵢ(√det h hⁱʲ ∂ⱼ f)`, the divergence taken by central
/// differences of exact-jet fluxes with step `h · max(1, |coordinate|)`.
pub fn induced_laplacian(field: &dyn GraphField, p: DomainPoint, h: f64) -> Result<f64> {
    let flux = |dx: f64, dy: f64| -> Result<[f64; 2]> {
        let q = p.offset(dx, dy)?;
        if !field.admits(q) {
            return Err(Error::DomainViolation {
                context: "induced Laplacian stencil".into(),
                x: q.x(),
                y: q.y(),
            });
        }
        Ok(induced_flux(q, &field.jet2(q)?))
    };
    let hx = h * p.x().abs().max(1.0);
    let hy = h * p.y().abs().max(1.0);
    let div = (flux(hx, 0.0)?[0] - flux(-hx, 0.0)?[0]) / (2.0 * hx)
        + (flux(0.0, hy)?[1] - flux(0.0, -hy)?[1]) / (2.0 * hy);
    Ok(div / w_factor(p, &field.jet2(p)?))
}

/// Default relative step for [`induced_laplacian`].
pub const INDUCED_LAPLACIAN_STEP: f64 = 1e-4;

/// Geodesic curvature of the level curve of `f` through `p`, written locally
/// as the graph `x ↦ (x, y(x))`.
pub fn level_curve_curvature(p: DomainPoint, j: &Jet2) -> Result<f64> {
    if j.fy == 0.0 {
        return Err(Error::LevelCurveDegenerate { x: p.x(), y: p.y() });
    }
    let yp = -j.fx / j.fy;
    let ypp = -(j.fxx + 2.0 * j.fxy * yp + j.fyy * yp * yp) / j.fy;
    Ok(geodesic_curvature_graph_curve(p.y(), yp, ypp))
}

/// `Δf - sign(f_y) y k_g |∇f|³` with the flat Laplacian and Euclidean
/// gradient norm; zero exactly when `f` satisfies the minimal-surface
/// equation at `p`.
pub fn level_curve_identity_residual(p: DomainPoint, j: &Jet2) -> Result<f64> {
    let kg = level_curve_curvature(p, j)?;
    let g = j.fx.hypot(j.fy);
    Ok(flat_laplacian(j) - j.fy.signum() * p.y() * kg * g * g * g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SolutionSpec;
    use crate::series::Series;
    use crate::shape::{minimal_residual, SeriesField};

    fn pt(x: f64, y: f64) -> DomainPoint {
        DomainPoint::new(x, y).unwrap()
    }

    #[test]
    fn constant_graph_area_is_half() {
        let r = Rect::new(0.0, 1.0, 1.0, 2.0).unwrap();
        let a = area(&SolutionSpec::horizontal_plane(3.0), r, 128).unwrap();
        assert!((a.area - 0.5).abs() < 1e-8);
        assert!(a.estimated_error < 1e-7);
    }

    #[test]
    fn plane_area_matches_closed_form() {
        // ∫ √(y² + 1)/y² dy = -√(y² + 1)/y + asinh y
        let prim = |y: f64| -(y * y + 1.0).sqrt() / y + y.asinh();
        let r = Rect::new(0.0, 1.0, 1.0, 2.0).unwrap();
        let a = area(&SolutionSpec::plane(1.0, 0.0), r, 128).unwrap();
        assert!((a.area - (prim(2.0) - prim(1.0))).abs() < 1e-8);
    }

    #[test]
    fn area_ignores_additive_constants() {
        let r = Rect::new(1.0, 2.0, 1.0, 2.0).unwrap();
        let a = area(&SolutionSpec::funnel(1.0, 0.0), r, 32).unwrap().area;
        let b = area(&SolutionSpec::funnel(1.0, 5.0), r, 32).unwrap().area;
        assert_eq!(a, b);
    }

    #[test]
    fn area_outside_domain_is_rejected() {
        let r = Rect::new(0.0, 1.0, 1.0, 3.0).unwrap();
        let spec = SolutionSpec::arcsin_y(0.5, 0.0).unwrap();
        assert!(matches!(
            area(&spec, r, 16),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn grid_area_converges_to_simpson() {
        let spec = SolutionSpec::funnel(1.0, 0.0);
        let r = Rect::new(1.0, 2.0, 1.0, 2.0).unwrap();
        let exact = area(&spec, r, 128).unwrap().area;
        let g = GridField::sample(r, 65, 65, &spec).unwrap();
        let rep = area_grid(&g);
        assert!((rep.area - exact).abs() < 1e-4);
        assert!((rep.area - exact).abs() < 3.0 * rep.estimated_error + 1e-12);
    }

    #[test]
    fn bumps_must_vanish_on_boundary() {
        let r = Rect::new(1.0, 2.0, 1.0, 2.0).unwrap();
        let f = GridField::from_fn(r, 9, 9, |_, _| 0.0).unwrap();
        let bad = GridField::from_fn(r, 9, 9, |x, _| x).unwrap();
        assert!(matches!(
            area_comparison(&f, &bad, &[0.1]),
            Err(Error::BumpNotVanishing(_))
        ));
        let cmp = area_comparison(&f, &sine_bump(&f, 1, 1), &[0.0, 0.1]).unwrap();
        assert_eq!(cmp.rows[0].diff, 0.0);
        assert!(cmp.rows[1].diff > 0.0);
    }

    #[test]
    fn induced_laplacian_matches_scaled_residual() {
        // Δ_h f = residual / (y⁶ w⁴)
        let f = SeriesField::new(|x: Series, y: Series| x * y + y.square() * 0.3);
        for (x, y) in [(0.0, 1.0), (0.4, 0.7), (-1.2, 2.5)] {
            let p = pt(x, y);
            let j = f.jet2(p).unwrap();
            let w = w_factor(p, &j);
            let expect = minimal_residual(p, &j) / (y.powi(6) * w.powi(4));
            let got = induced_laplacian(&f, p, INDUCED_LAPLACIAN_STEP).unwrap();
            assert!((got - expect).abs() < 1e-7, "{got} vs {expect}");
        }
        let fy = SeriesField::new(|_x: Series, y: Series| y);
        let v = induced_laplacian(&fy, pt(0.0, 1.0), INDUCED_LAPLACIAN_STEP).unwrap();
        assert!((v + 0.25).abs() < 1e-7);
    }

    #[test]
    fn induced_laplacian_vanishes_on_minimal_examples() {
        let funnel = SolutionSpec::funnel(1.0, 0.0);
        let plane = SolutionSpec::plane(1.0, 0.0);
        assert!(
            induced_laplacian(&funnel, pt(1.0, 1.0), INDUCED_LAPLACIAN_STEP)
                .unwrap()
                .abs()
                < 1e-6
        );
        assert!(
            induced_laplacian(&plane, pt(-0.4, 0.3), INDUCED_LAPLACIAN_STEP)
                .unwrap()
                .abs()
                < 1e-6
        );
    }

    #[test]
    fn flat_laplacian_examples() {
        let p = pt(0.3, 1.1);
        assert_eq!(
            flat_laplacian(&SolutionSpec::funnel(1.0, 0.0).jet2(p).unwrap()),
            0.0
        );
        let a = 0.5_f64;
        let y = 1.1;
        let got = flat_laplacian(&SolutionSpec::arcsin_y(a, 0.0).unwrap().jet2(p).unwrap());
        let expect = a.powi(3) * y / (1.0 - a * a * y * y).powf(1.5);
        assert!((got - expect).abs() < 1e-14);
    }

    #[test]
    fn level_curve_identity_examples() {
        let funnel = SolutionSpec::funnel(1.0, 0.0);
        let p = pt(0.7, 1.3);
        let j = funnel.jet2(p).unwrap();
        assert!(level_curve_identity_residual(p, &j).unwrap().abs() < 1e-9);
        assert!(level_curve_curvature(p, &j).unwrap().abs() < 1e-9);

        for a in [0.5, -0.5] {
            // f = arcsin(a y) with a < 0 has f_y < 0, which needs the sign factor
            let f = SeriesField::new(move |_x: Series, y: Series| (y * a).asin());
            let j = f.jet2(pt(0.2, 1.2)).unwrap();
            assert!(
                level_curve_identity_residual(pt(0.2, 1.2), &j)
                    .unwrap()
                    .abs()
                    < 1e-9
            );
            assert_eq!(level_curve_curvature(pt(0.2, 1.2), &j).unwrap(), 1.0);
        }

        let j = Jet2 {
            fy: 1.0,
            ..Jet2::default()
        };
        assert_eq!(
            level_curve_identity_residual(pt(0.0, 1.0), &j).unwrap(),
            -1.0
        );
        let flat = Jet2 {
            fx: 1.0,
            ..Jet2::default()
        };
        assert!(matches!(
            level_curve_identity_residual(pt(0.0, 1.0), &flat),
            Err(Error::LevelCurveDegenerate { .. })
        ));
    }
}
