//! Pointwise geometry of graph surfaces `φ(x, y) = (x, y, f(x, y))` and of
//! vertical surfaces.
//!
//! Every graph quantity is a function of the point and the second-order jet of
//! `f` there. With `w = √(y²(f_x² + f_y²) + 1) / y²`:
//!
//! ```text
//! E = f_x² + 1/y²        F = f_x f_y        G = f_y² + 1/y²
//! L = (y f_xx - f_y) / (w y³)
//! M = (y f_xy + f_x) / (w y³)
//! N = (y f_yy + f_y) / (w y³)
//! ξ = -f_x/(w y) E1 - f_y/(w y) E2 + 1/(w y²) E3
//! ```
//!
//! The normal is the upward one; all second-form signs follow from it.

mod gauss;
mod vertical;

pub use gauss::{
    gauss_map, gauss_map_differential, gauss_map_differential_fd, gauss_pca_rank, gauss_rank,
    gauss_rank_with, pca_spread_ratio, GaussRank, PcaRank, GAUSS_RANK_NOISE_FLOOR,
    GAUSS_RANK_THRESHOLD, PCA_PATCH_RADIUS, PCA_RANK1_MAX_RATIO, PCA_RANK2_MIN_RATIO,
};
pub use vertical::{
    cylinder_ode_residual, vertical_plane_data, vertical_surface_data, VerticalProfile,
    VerticalSurfaceData,
};

use crate::ambient::{DomainPoint, FrameVector};
use crate::catalog::UmbilicalParams;
use crate::error::{Error, Result};
use crate::series::Series;

/// Second-order jet of a scalar function at a point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
}

/// Third-order jet; [`Jet3::second_order`] drops the third derivatives.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet3 {
    pub f: f64,
    pub fx: f64,
    pub fy: f64,
    pub fxx: f64,
    pub fxy: f64,
    pub fyy: f64,
    pub fxxx: f64,
    pub fxxy: f64,
    pub fxyy: f64,
    pub fyyy: f64,
}

impl Jet3 {
    pub fn second_order(&self) -> Jet2 {
        Jet2 {
            f: self.f,
            fx: self.fx,
            fy: self.fy,
            fxx: self.fxx,
            fxy: self.fxy,
            fyy: self.fyy,
        }
    }
}

impl From<Jet3> for Jet2 {
    fn from(j: Jet3) -> Self {
        j.second_order()
    }
}

/// A scalar field over (part of) the upper half-plane whose jets can be
/// evaluated pointwise.
pub trait GraphField: Sync {
    fn jet3(&self, p: DomainPoint) -> Result<Jet3>;

    fn jet2(&self, p: DomainPoint) -> Result<Jet2> {
        self.jet3(p).map(|j| j.second_order())
    }

    fn value(&self, p: DomainPoint) -> Result<f64> {
        self.jet3(p).map(|j| j.f)
    }

    /// Whether `p` lies in the admissible domain of the field.
    fn admits(&self, p: DomainPoint) -> bool;
}

/// A field given by an expression in jet arithmetic, defined on the whole
/// half-plane. Handy for non-catalog test surfaces such as `f = y`.
pub struct SeriesField<F> {
    expr: F,
}

impl<F> SeriesField<F>
where
    F: Fn(Series, Series) -> Series + Sync,
{
    pub fn new(expr: F) -> Self {
        Self { expr }
    }
}

impl<F> GraphField for SeriesField<F>
where
    F: Fn(Series, Series) -> Series + Sync,
{
    fn jet3(&self, p: DomainPoint) -> Result<Jet3> {
        Ok((self.expr)(Series::var_x(p.x()), Series::var_y(p.y())).jet3())
    }

    fn admits(&self, _p: DomainPoint) -> bool {
        true
    }
}

/// First and second fundamental forms, area factor and normal at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceData {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub w: f64,
    pub normal: FrameVector,
}

impl SurfaceData {
    /// Largest violation of `E, G, w > 0`, `EG - F² = w²` (relative) and
    /// `|ξ| = 1`.
    pub fn invariant_defect(&self) -> f64 {
        if self.e <= 0.0 || self.g <= 0.0 || self.w <= 0.0 {
            return f64::INFINITY;
        }
        let det = self.e * self.g - self.f * self.f;
        let w2 = self.w * self.w;
        ((det - w2).abs() / w2).max((self.normal.norm() - 1.0).abs())
    }

    pub fn mean_curvature(&self) -> f64 {
        (self.g * self.l - 2.0 * self.f * self.m + self.e * self.n)
            / (2.0 * (self.e * self.g - self.f * self.f))
    }
}

pub fn w_factor(p: DomainPoint, j: &Jet2) -> f64 {
    let y = p.y();
    (y * y * (j.fx * j.fx + j.fy * j.fy) + 1.0).sqrt() / (y * y)
}

pub fn first_forms(p: DomainPoint, j: &Jet2) -> (f64, f64, f64) {
    let inv = 1.0 / (p.y() * p.y());
    (j.fx * j.fx + inv, j.fx * j.fy, j.fy * j.fy + inv)
}

/// `ξ = (-y f_x, -y f_y, 1) / S` with `S = y² w = √(1 + y²|∇f|²)`.
pub fn unit_normal(p: DomainPoint, j: &Jet2) -> FrameVector {
    let y = p.y();
    let s = (1.0 + y * y * (j.fx * j.fx + j.fy * j.fy)).sqrt();
    FrameVector::new(-y * j.fx / s, -y * j.fy / s, 1.0 / s)
}

pub fn second_forms(p: DomainPoint, j: &Jet2) -> (f64, f64, f64) {
    let y = p.y();
    let d = w_factor(p, j) * y * y * y;
    (
        (y * j.fxx - j.fy) / d,
        (y * j.fxy + j.fx) / d,
        (y * j.fyy + j.fy) / d,
    )
}

pub fn surface_data(p: DomainPoint, j: &Jet2) -> SurfaceData {
    let (e, f, g) = first_forms(p, j);
    let (l, m, n) = second_forms(p, j);
    SurfaceData {
        e,
        f,
        g,
        l,
        m,
        n,
        w: w_factor(p, j),
        normal: unit_normal(p, j),
    }
}

/// `H = (GL - 2FM + EN) / (2(EG - F²))`.
pub fn mean_curvature(p: DomainPoint, j: &Jet2) -> f64 {
    surface_data(p, j).mean_curvature()
}

/// Left-hand side of the minimal-surface equation
///
/// ```text
/// (1 + y² f_y²) f_xx - y (f_x² + f_y²) f_y - 2 y² f_x f_y f_xy + (1 + y² f_x²) f_yy
/// ```
///
/// It relates to the mean curvature by `residual = 2 H w³ y⁴`.
pub fn minimal_residual(p: DomainPoint, j: &Jet2) -> f64 {
    let y = p.y();
    let y2 = y * y;
    (1.0 + y2 * j.fy * j.fy) * j.fxx
        - y * (j.fx * j.fx + j.fy * j.fy) * j.fy
        - 2.0 * y2 * j.fx * j.fy * j.fxy
        + (1.0 + y2 * j.fx * j.fx) * j.fyy
}

/// Flux `∇f / √(1 + y²|∇f|²)` whose Euclidean divergence, scaled by `y²/2`,
/// is the mean curvature.
pub fn mean_curvature_flux(p: DomainPoint, j: &Jet2) -> [f64; 2] {
    let y = p.y();
    let s = (1.0 + y * y * (j.fx * j.fx + j.fy * j.fy)).sqrt();
    [j.fx / s, j.fy / s]
}

/// Mean curvature in divergence form, `H = (y²/2) div(∇f/√(1 + y²|∇f|²))`,
/// with the divergence taken by central differences of the flux.
pub fn mean_curvature_divergence_fd(field: &dyn GraphField, p: DomainPoint, h: f64) -> Result<f64> {
    let flux = |dx: f64, dy: f64| -> Result<[f64; 2]> {
        let q = p.offset(dx, dy)?;
        Ok(mean_curvature_flux(q, &field.jet2(q)?))
    };
    let hx = h * p.x().abs().max(1.0);
    let hy = h * p.y().abs().max(1.0);
    let div = (flux(hx, 0.0)?[0] - flux(-hx, 0.0)?[0]) / (2.0 * hx)
        + (flux(0.0, hy)?[1] - flux(0.0, -hy)?[1]) / (2.0 * hy);
    Ok(0.5 * p.y() * p.y() * div)
}

/// Matrix of the shape operator `A_ξ` in the coordinate basis `{φ_x, φ_y}`,
/// acting on column vectors: `A φ_x = a11 φ_x + a21 φ_y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeOperator {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl ShapeOperator {
    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn determinant(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn mean_curvature(&self) -> f64 {
        0.5 * self.trace()
    }

    /// Principal curvatures `(k1, k2)` with `k1 ≥ k2`. The operator is
    /// self-adjoint for the induced metric so the spectrum is real; a
    /// rounding-level negative discriminant is read as a double eigenvalue.
    pub fn principal_curvatures(&self) -> (f64, f64) {
        let half = 0.5 * (self.a11 - self.a22);
        let disc = half * half + self.a12 * self.a21;
        let r = disc.max(0.0).sqrt();
        let m = self.mean_curvature();
        (m + r, m - r)
    }

    /// Asymmetry of `h A`, which must vanish for a self-adjoint operator;
    /// `h` is the induced metric `[[E, F], [F, G]]`.
    pub fn self_adjoint_defect(&self, e: f64, f: f64, g: f64) -> f64 {
        let s12 = e * self.a12 + f * self.a22;
        let s21 = f * self.a11 + g * self.a21;
        (s12 - s21).abs()
    }

    /// `h A`; equals the second fundamental form matrix `[[L, M], [M, N]]`.
    pub fn lowered(&self, e: f64, f: f64, g: f64) -> [[f64; 2]; 2] {
        [
            [e * self.a11 + f * self.a21, e * self.a12 + f * self.a22],
            [f * self.a11 + g * self.a21, f * self.a12 + g * self.a22],
        ]
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        (self.a11 - o.a11)
            .abs()
            .max((self.a12 - o.a12).abs())
            .max((self.a21 - o.a21).abs())
            .max((self.a22 - o.a22).abs())
    }
}

/// The four ratios whose derivatives make up the shape operator, expanded to
/// first order around `p`.
struct Ratios {
    fx_w: Series,
    fy_w: Series,
    fx_yw: Series,
    fy_yw: Series,
}

fn ratios(p: DomainPoint, j: &Jet2) -> Ratios {
    let fx = Series::linear(j.fx, j.fxx, j.fxy);
    let fy = Series::linear(j.fy, j.fxy, j.fyy);
    let y = Series::var_y(p.y());
    let y2 = y * y;
    let w = (y2 * (fx * fx + fy * fy) + 1.0).sqrt() / y2;
    let yw = y * w;
    Ratios {
        fx_w: fx / w,
        fy_w: fy / w,
        fx_yw: fx / yw,
        fy_yw: fy / yw,
    }
}

/// Exact shape operator from a second-order jet:
///
/// ```text
/// a11 = (f_x/w)_x - f_y/(y w)      a12 = y (f_x/(y w))_y
/// a21 = (f_y/w)_x + f_x/(y w)      a22 = y (f_y/(y w))_y
/// ```
///
/// The entries differentiate ratios of first derivatives, so second
/// derivatives of `f` are all that is needed.
pub fn shape_operator(p: DomainPoint, j: &Jet2) -> ShapeOperator {
    let y = p.y();
    let r = ratios(p, j);
    ShapeOperator {
        a11: r.fx_w.dx() - r.fy_yw.value(),
        a12: y * r.fx_yw.dy(),
        a21: r.fy_w.dx() + r.fx_yw.value(),
        a22: y * r.fy_yw.dy(),
    }
}

/// Shape operator from central differences of jet evaluations, for fields
/// whose second derivatives are not trusted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdShapeOperator {
    pub operator: ShapeOperator,
    /// `max |A_h - A_2h| / 3`, the Richardson estimate of the O(h²) error.
    pub truncation_estimate: f64,
}

pub fn shape_operator_fd(
    field: &dyn GraphField,
    p: DomainPoint,
    h: f64,
) -> Result<FdShapeOperator> {
    let at = |dx: f64, dy: f64| -> Result<[f64; 4]> {
        let q = p.offset(dx, dy)?;
        let j = field.jet2(q)?;
        let y = q.y();
        let w = w_factor(q, &j);
        Ok([j.fx / w, j.fy / w, j.fx / (y * w), j.fy / (y * w)])
    };
    let centre = at(0.0, 0.0)?;
    let y = p.y();
    let build = |step: f64| -> Result<ShapeOperator> {
        let hx = step * p.x().abs().max(1.0);
        let hy = step * y.max(1.0);
        let (xp, xm) = (at(hx, 0.0)?, at(-hx, 0.0)?);
        let (yp, ym) = (at(0.0, hy)?, at(0.0, -hy)?);
        let ddx = |k: usize| (xp[k] - xm[k]) / (2.0 * hx);
        let ddy = |k: usize| (yp[k] - ym[k]) / (2.0 * hy);
        Ok(ShapeOperator {
            a11: ddx(0) - centre[3],
            a12: y * ddy(2),
            a21: ddx(1) + centre[2],
            a22: y * ddy(3),
        })
    };
    let fine = build(h)?;
    let coarse = build(2.0 * h)?;
    Ok(FdShapeOperator {
        operator: fine,
        truncation_estimate: fine.max_abs_diff(&coarse) / 3.0,
    })
}

/// The three expressions whose simultaneous vanishing characterises
/// umbilical graphs.
pub fn umbilicity_terms(p: DomainPoint, j: &Jet2) -> [f64; 3] {
    let r = ratios(p, j);
    [
        r.fx_yw.dy(),
        r.fy_w.dx() + r.fx_yw.value(),
        r.fx_w.dx() - r.fy_w.dy(),
    ]
}

/// Max absolute value of [`umbilicity_terms`]. Unscaled, so it stays
/// meaningful where the umbilical curvature is close to zero.
pub fn umbilicity_residual(p: DomainPoint, j: &Jet2) -> f64 {
    umbilicity_terms(p, j)
        .iter()
        .fold(0.0_f64, |m, t| m.max(t.abs()))
}

/// `|y² w - 1/√(j - λ²)|` for a member of the umbilical graph family.
pub fn codazzi_identity_residual(p: DomainPoint, params: &UmbilicalParams) -> Result<f64> {
    let lambda = params.lambda(p);
    let gap = params.j() - lambda * lambda;
    if gap <= 0.0 {
        return Err(Error::DomainViolation {
            context: "umbilical graph requires j - λ² > 0".into(),
            x: p.x(),
            y: p.y(),
        });
    }
    let jet = params.jet(p)?.second_order();
    let y = p.y();
    Ok((y * y * w_factor(p, &jet) - 1.0 / gap.sqrt()).abs())
}

/// Max of `|f_xx - f_y/y|`, `|f_yy + f_y/y|`, `|f_xy + f_x/y|`; zero exactly
/// where the graph is totally geodesic.
pub fn totally_geodesic_residual(p: DomainPoint, j: &Jet2) -> f64 {
    let y = p.y();
    (j.fxx - j.fy / y)
        .abs()
        .max((j.fyy + j.fy / y).abs())
        .max((j.fxy + j.fx / y).abs())
}
