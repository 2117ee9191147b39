//! Closed-form families of minimal, totally geodesic and umbilical surfaces,
//! evaluable with exact derivatives through third order.
//!
//! The harmonic families (`Funnel`, `RationalX`) are written as real parts of
//! holomorphic functions, so `∂ₓₓ f = -∂ᵧᵧ f` holds bit for bit. `ArcsinY`
//! and the planes are differentiated by hand. `ArcsinInvY` and
//! `UmbilicalGraph` are compositions and go through [`Series`] arithmetic.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::ambient::DomainPoint;
use crate::error::{Error, Result};
use crate::series::Series;
use crate::shape::{GraphField, Jet3, VerticalProfile};

/// Default shrink of admissible regions: the defining inequality of each
/// family must hold with at least this slack.
pub const DEFAULT_DOMAIN_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Plane,
    ArcsinY,
    Funnel,
    RationalX,
    ArcsinInvY,
    UmbilicalGraph,
    HorizontalPlane,
    VerticalPlane,
    GeodesicCylinder,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Plane,
        Family::ArcsinY,
        Family::Funnel,
        Family::RationalX,
        Family::ArcsinInvY,
        Family::UmbilicalGraph,
        Family::HorizontalPlane,
        Family::VerticalPlane,
        Family::GeodesicCylinder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Plane => "Plane",
            Family::ArcsinY => "ArcsinY",
            Family::Funnel => "Funnel",
            Family::RationalX => "RationalX",
            Family::ArcsinInvY => "ArcsinInvY",
            Family::UmbilicalGraph => "UmbilicalGraph",
            Family::HorizontalPlane => "HorizontalPlane",
            Family::VerticalPlane => "VerticalPlane",
            Family::GeodesicCylinder => "GeodesicCylinder",
        }
    }

    /// Names of the real constants of the family, in constructor order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Plane | Family::ArcsinY | Family::Funnel | Family::ArcsinInvY => &["a", "b"],
            Family::RationalX | Family::HorizontalPlane | Family::VerticalPlane => &["c"],
            Family::UmbilicalGraph => &["c1", "c2", "c3", "c"],
            Family::GeodesicCylinder => &["c1", "c2"],
        }
    }

    pub fn is_graph(self) -> bool {
        !matches!(self, Family::VerticalPlane | Family::GeodesicCylinder)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Constants of the umbilical graph family
/// `f = arctan(λ/√(j - λ²)) + c` with
/// `λ(x, y) = ((c1/2)(x² + y²) + c2 x - c3) / y` and `j = 1 - c2² - 2 c1 c3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UmbilicalParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c: f64,
}

impl UmbilicalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        Self::with_offset(c1, c2, c3, 0.0)
    }

    pub fn with_offset(c1: f64, c2: f64, c3: f64, c: f64) -> Result<Self> {
        let p = Self { c1, c2, c3, c };
        if p.j() > 0.0 {
            Ok(p)
        } else {
            Err(Error::InvalidParameters(format!(
                "umbilical family needs j = 1 - c2² - 2 c1 c3 > 0, got {}",
                p.j()
            )))
        }
    }

    /// `j = 1 - c2² - 2 c1 c3`, constant over the surface.
    pub fn j(&self) -> f64 {
        1.0 - self.c2 * self.c2 - 2.0 * self.c1 * self.c3
    }

    pub fn lambda(&self, p: DomainPoint) -> f64 {
        let (x, y) = (p.x(), p.y());
        (0.5 * self.c1 * (x * x + y * y) + self.c2 * x - self.c3) / y
    }

    fn lambda_series(&self, x: Series, y: Series) -> Series {
        (0.5 * self.c1 * (x * x + y * y) + self.c2 * x - self.c3) / y
    }

    pub fn jet(&self, p: DomainPoint) -> Result<Jet3> {
        let lam = self.lambda_series(Series::var_x(p.x()), Series::var_y(p.y()));
        let gap = self.j() - lam.square();
        if gap.value() <= 0.0 {
            return Err(Error::DomainViolation {
                context: "UmbilicalGraph".into(),
                x: p.x(),
                y: p.y(),
            });
        }
        Ok(((lam / gap.sqrt()).atan() + self.c).jet3())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Params {
    Plane { a: f64, b: f64 },
    ArcsinY { a: f64, b: f64 },
    Funnel { a: f64, b: f64 },
    RationalX { c: f64 },
    ArcsinInvY { a: f64, b: f64 },
    Umbilical(UmbilicalParams),
    HorizontalPlane { c: f64 },
    VerticalPlane { c: f64 },
    GeodesicCylinder { c1: f64, c2: f64 },
}

/// One member of a catalog family together with its admissible domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolutionSpec {
    params: Params,
    margin: f64,
}

impl SolutionSpec {
    fn new(params: Params) -> Self {
        Self {
            params,
            margin: DEFAULT_DOMAIN_MARGIN,
        }
    }

    /// `f = a x + b`.
    pub fn plane(a: f64, b: f64) -> Self {
        Self::new(Params::Plane { a, b })
    }

    /// `f = arcsin(a y) + b` on `0 < y < 1/a`, `a > 0`.
    pub fn arcsin_y(a: f64, b: f64) -> Result<Self> {
        if a > 0.0 {
            Ok(Self::new(Params::ArcsinY { a, b }))
        } else {
            Err(Error::InvalidParameters(format!(
                "ArcsinY needs a > 0, got {a}"
            )))
        }
    }

    /// `f = a ln(x² + y²) + b`.
    pub fn funnel(a: f64, b: f64) -> Self {
        Self::new(Params::Funnel { a, b })
    }

    /// `f = c x / (x² + y²)`.
    pub fn rational_x(c: f64) -> Self {
        Self::new(Params::RationalX { c })
    }

    /// `f = arcsin(a y / (x² + y²)) + b` where `|a y/(x² + y²)| < 1`.
    pub fn arcsin_inv_y(a: f64, b: f64) -> Self {
        Self::new(Params::ArcsinInvY { a, b })
    }

    pub fn umbilical(c1: f64, c2: f64, c3: f64, c: f64) -> Result<Self> {
        Ok(Self::new(Params::Umbilical(UmbilicalParams::with_offset(
            c1, c2, c3, c,
        )?)))
    }

    /// `z = c`.
    pub fn horizontal_plane(c: f64) -> Self {
        Self::new(Params::HorizontalPlane { c })
    }

    /// The vertical plane `x = c`.
    pub fn vertical_plane(c: f64) -> Self {
        Self::new(Params::VerticalPlane { c })
    }

    /// Cylinder over the geodesic `a(u) = √(-u² + 2 c1 u + c2)`, the upper
    /// semicircle of centre `(c1, 0)` and radius `√(c1² + c2)`.
    pub fn geodesic_cylinder(c1: f64, c2: f64) -> Result<Self> {
        if c1 * c1 + c2 > 0.0 {
            Ok(Self::new(Params::GeodesicCylinder { c1, c2 }))
        } else {
            Err(Error::InvalidParameters(format!(
                "GeodesicCylinder needs c1² + c2 > 0, got {}",
                c1 * c1 + c2
            )))
        }
    }

    /// Builds a spec from named constants; missing constants default to 0,
    /// unknown names are rejected.
    pub fn from_named(family: Family, values: &[(&str, f64)]) -> Result<Self> {
        let names = family.param_names();
        for (k, _) in values {
            if !names.contains(k) {
                return Err(Error::InvalidParameters(format!(
                    "{family} has no constant {k:?} (expected one of {names:?})"
                )));
            }
        }
        let get = |n: &str| {
            values
                .iter()
                .find(|(k, _)| *k == n)
                .map_or(0.0, |(_, v)| *v)
        };
        match family {
            Family::Plane => Ok(Self::plane(get("a"), get("b"))),
            Family::ArcsinY => Self::arcsin_y(get("a"), get("b")),
            Family::Funnel => Ok(Self::funnel(get("a"), get("b"))),
            Family::RationalX => Ok(Self::rational_x(get("c"))),
            Family::ArcsinInvY => Ok(Self::arcsin_inv_y(get("a"), get("b"))),
            Family::UmbilicalGraph => Self::umbilical(get("c1"), get("c2"), get("c3"), get("c")),
            Family::HorizontalPlane => Ok(Self::horizontal_plane(get("c"))),
            Family::VerticalPlane => Ok(Self::vertical_plane(get("c"))),
            Family::GeodesicCylinder => Self::geodesic_cylinder(get("c1"), get("c2")),
        }
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn family(&self) -> Family {
        match self.params {
            Params::Plane { .. } => Family::Plane,
            Params::ArcsinY { .. } => Family::ArcsinY,
            Params::Funnel { .. } => Family::Funnel,
            Params::RationalX { .. } => Family::RationalX,
            Params::ArcsinInvY { .. } => Family::ArcsinInvY,
            Params::Umbilical(_) => Family::UmbilicalGraph,
            Params::HorizontalPlane { .. } => Family::HorizontalPlane,
            Params::VerticalPlane { .. } => Family::VerticalPlane,
            Params::GeodesicCylinder { .. } => Family::GeodesicCylinder,
        }
    }

    /// Named constants, in [`Family::param_names`] order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        let vals: Vec<f64> = match self.params {
            Params::Plane { a, b }
            | Params::ArcsinY { a, b }
            | Params::Funnel { a, b }
            | Params::ArcsinInvY { a, b } => vec![a, b],
            Params::RationalX { c }
            | Params::HorizontalPlane { c }
            | Params::VerticalPlane { c } => {
                vec![c]
            }
            Params::Umbilical(u) => vec![u.c1, u.c2, u.c3, u.c],
            Params::GeodesicCylinder { c1, c2 } => vec![c1, c2],
        };
        self.family()
            .param_names()
            .iter()
            .copied()
            .zip(vals)
            .collect()
    }

    pub fn umbilical_params(&self) -> Option<UmbilicalParams> {
        match self.params {
            Params::Umbilical(u) => Some(u),
            _ => None,
        }
    }

    /// Admissibility of a point of the `(x, y)` domain for graph families.
    /// Vertical families have no graph domain and admit nothing.
    pub fn admissible(&self, p: DomainPoint) -> bool {
        let eps = self.margin;
        let (x, y) = (p.x(), p.y());
        if y < eps {
            return false;
        }
        match self.params {
            Params::Plane { .. }
            | Params::Funnel { .. }
            | Params::RationalX { .. }
            | Params::HorizontalPlane { .. } => true,
            Params::ArcsinY { a, .. } => 1.0 - a * y >= eps,
            Params::ArcsinInvY { a, .. } => 1.0 - (a * y / (x * x + y * y)).abs() >= eps,
            Params::Umbilical(u) => {
                let l = u.lambda(p);
                u.j() - l * l >= eps
            }
            Params::VerticalPlane { .. } | Params::GeodesicCylinder { .. } => false,
        }
    }

    /// Exact jet through third order.
    pub fn jets(&self, p: DomainPoint) -> Result<Jet3> {
        if !self.family().is_graph() {
            return Err(Error::NotAGraph(self.family().name()));
        }
        if !self.admissible(p) {
            return Err(Error::DomainViolation {
                context: self.family().name().into(),
                x: p.x(),
                y: p.y(),
            });
        }
        let (x, y) = (p.x(), p.y());
        Ok(match self.params {
            Params::Plane { a, b } => Jet3 {
                f: a * x + b,
                fx: a,
                ..Jet3::default()
            },
            Params::HorizontalPlane { c } => Jet3 {
                f: c,
                ..Jet3::default()
            },
            Params::ArcsinY { a, b } => {
                let u = a * y;
                let q = 1.0 - u * u;
                let s = q.sqrt();
                Jet3 {
                    f: u.asin() + b,
                    fy: a / s,
                    fyy: a * a * u / (q * s),
                    fyyy: a * a * a * (1.0 + 2.0 * u * u) / (q * q * s),
                    ..Jet3::default()
                }
            }
            Params::Funnel { a, b } => {
                // a ln|z|² = Re(2a ln z)
                let z = Complex64::new(x, y);
                let r = z.inv();
                let d1 = 2.0 * a * r;
                let d2 = -d1 * r;
                let d3 = -2.0 * d2 * r;
                harmonic_jet(a * (x * x + y * y).ln() + b, d1, d2, d3)
            }
            Params::RationalX { c } => {
                // c x/|z|² = Re(c/z)
                let z = Complex64::new(x, y);
                let r = z.inv();
                let d1 = -c * r * r;
                let d2 = -2.0 * d1 * r;
                let d3 = -3.0 * d2 * r;
                harmonic_jet(c * x / (x * x + y * y), d1, d2, d3)
            }
            Params::ArcsinInvY { a, b } => {
                let (xs, ys) = (Series::var_x(x), Series::var_y(y));
                ((a * ys / (xs * xs + ys * ys)).asin() + b).jet3()
            }
            Params::Umbilical(u) => u.jet(p)?,
            Params::VerticalPlane { .. } | Params::GeodesicCylinder { .. } => unreachable!(),
        })
    }

    /// Profile `a(u)` of a geodesic cylinder, with its first two derivatives.
    pub fn profile(&self, u: f64) -> Result<VerticalProfile> {
        match self.params {
            Params::GeodesicCylinder { c1, c2 } => {
                let a2 = -u * u + 2.0 * c1 * u + c2;
                if a2 < self.margin {
                    return Err(Error::DomainViolation {
                        context: "GeodesicCylinder profile".into(),
                        x: u,
                        y: a2.max(0.0).sqrt(),
                    });
                }
                let a = a2.sqrt();
                let d = c1 - u;
                VerticalProfile::new(a, d / a, -(a2 + d * d) / (a2 * a))
            }
            _ => Err(Error::InvalidParameters(format!(
                "{} has no cylinder profile",
                self.family()
            ))),
        }
    }

    /// Open interval of `u` on which a geodesic cylinder's profile is
    /// positive, shrunk by the domain margin.
    pub fn profile_interval(&self) -> Option<(f64, f64)> {
        match self.params {
            Params::GeodesicCylinder { c1, c2 } => {
                let r2 = c1 * c1 + c2 - self.margin;
                (r2 > 0.0).then(|| (c1 - r2.sqrt(), c1 + r2.sqrt()))
            }
            _ => None,
        }
    }

    /// The `c` of the vertical plane `x = c`.
    pub fn vertical_plane_offset(&self) -> Option<f64> {
        match self.params {
            Params::VerticalPlane { c } => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for SolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Jet of `Re F + const` from the holomorphic derivatives `F', F'', F'''`,
/// using `∂ₓᵏ ∂ᵧˡ F = iˡ F⁽ᵏ⁺ˡ⁾`.
fn harmonic_jet(f: f64, d1: Complex64, d2: Complex64, d3: Complex64) -> Jet3 {
    Jet3 {
        f,
        fx: d1.re,
        fy: -d1.im,
        fxx: d2.re,
        fxy: -d2.im,
        fyy: -d2.re,
        fxxx: d3.re,
        fxxy: -d3.im,
        fxyy: -d3.re,
        fyyy: d3.im,
    }
}

impl GraphField for SolutionSpec {
    fn jet3(&self, p: DomainPoint) -> Result<Jet3> {
        self.jets(p)
    }

    fn admits(&self, p: DomainPoint) -> bool {
        self.family().is_graph() && self.admissible(p)
    }
}

/// `field(x - shift, y)`: the image of a field under the horizontal
/// translation isometry `x ↦ x + shift`.
pub struct Translated<F> {
    pub inner: F,
    pub shift: f64,
}

impl<F: GraphField> Translated<F> {
    fn pull_back(&self, p: DomainPoint) -> Result<DomainPoint> {
        DomainPoint::new(p.x() - self.shift, p.y())
    }
}

impl<F: GraphField> GraphField for Translated<F> {
    fn jet3(&self, p: DomainPoint) -> Result<Jet3> {
        self.inner.jet3(self.pull_back(p)?)
    }

    fn admits(&self, p: DomainPoint) -> bool {
        self.pull_back(p)
            .map(|q| self.inner.admits(q))
            .unwrap_or(false)
    }
}

/// `-arcsin(c3/y) + c` on `y > |c3|`.
pub fn special_umbilical_closed_form(c3: f64, c: f64, y: f64) -> f64 {
    -(c3 / y).asin() + c
}

/// Umbilical graph with `c1 = c2 = 0`. Checks that it agrees with
/// `-arcsin(c3/y) + c` up to an additive constant on `y ∈ (|c3|, 10|c3|]`.
pub fn special_umbilical(c3: f64, c: f64) -> Result<SolutionSpec> {
    if c3 == 0.0 || !c3.is_finite() {
        return Err(Error::InvalidParameters(
            "special umbilical graph needs c3 != 0".into(),
        ));
    }
    let spec = SolutionSpec::umbilical(0.0, 0.0, c3, c)?;
    let r = c3.abs();
    let sample: Vec<f64> = (1..=20)
        .map(|k| r * (1.0 + 9.0 * k as f64 / 20.0))
        .collect();
    let diff = |y: f64| -> Result<f64> {
        let p = DomainPoint::new(0.37 * y, y)?;
        Ok(spec.jets(p)?.f - special_umbilical_closed_form(c3, c, y))
    };
    let anchor = diff(sample[0])?;
    for &y in &sample[1..] {
        let d = diff(y)?;
        if (d - anchor).abs() > 1e-10 {
            return Err(Error::InvalidParameters(format!(
                "umbilical graph with c3={c3} deviates from -arcsin(c3/y) at y={y}: {:e}",
                d - anchor
            )));
        }
    }
    Ok(spec)
}

/// Properties a family member is known to have.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpectedProperties {
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub umbilical: bool,
    /// Rank of the Gauss-map differential, when known.
    pub gauss_rank: Option<u8>,
    /// Completeness of the graph, when known. Not checked numerically.
    pub complete: Option<bool>,
}

pub fn list_expected_properties(spec: &SolutionSpec) -> ExpectedProperties {
    let none = ExpectedProperties::default();
    let vertical = ExpectedProperties {
        minimal: true,
        totally_geodesic: true,
        umbilical: true,
        ..none
    };
    match spec.params {
        Params::Plane { a, .. } => ExpectedProperties {
            minimal: true,
            totally_geodesic: a == 0.0,
            umbilical: a == 0.0,
            gauss_rank: Some(if a == 0.0 { 0 } else { 1 }),
            ..none
        },
        // ξ depends on y alone
        Params::ArcsinY { .. } => ExpectedProperties {
            minimal: true,
            gauss_rank: Some(1),
            ..none
        },
        Params::Funnel { a, .. } => ExpectedProperties {
            minimal: true,
            totally_geodesic: a == 0.0,
            umbilical: a == 0.0,
            gauss_rank: Some(if a == 0.0 { 0 } else { 1 }),
            complete: Some(true),
        },
        Params::RationalX { c } => ExpectedProperties {
            minimal: true,
            totally_geodesic: c == 0.0,
            umbilical: c == 0.0,
            gauss_rank: Some(if c == 0.0 { 0 } else { 2 }),
            complete: Some(true),
        },
        Params::ArcsinInvY { a, .. } => ExpectedProperties {
            minimal: true,
            totally_geodesic: a == 0.0,
            umbilical: a == 0.0,
            gauss_rank: Some(if a == 0.0 { 0 } else { 2 }),
            complete: Some(false),
        },
        Params::Umbilical(_) => ExpectedProperties {
            umbilical: true,
            ..none
        },
        Params::HorizontalPlane { .. } => ExpectedProperties {
            gauss_rank: Some(0),
            complete: Some(true),
            ..vertical
        },
        Params::VerticalPlane { .. } | Params::GeodesicCylinder { .. } => vertical,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> DomainPoint {
        DomainPoint::new(x, y).unwrap()
    }

    /// Central-difference oracle on the function values only.
    fn fd_jet(spec: &SolutionSpec, p: DomainPoint, h: f64) -> Jet3 {
        let f = |dx: f64, dy: f64| spec.jets(p.offset(dx, dy).unwrap()).unwrap().f;
        let fx = |a: f64, b: f64| (f(a + h, b) - f(a - h, b)) / (2.0 * h);
        let fy = |a: f64, b: f64| (f(a, b + h) - f(a, b - h)) / (2.0 * h);
        let fxx = |a: f64, b: f64| (f(a + h, b) - 2.0 * f(a, b) + f(a - h, b)) / (h * h);
        let fyy = |a: f64, b: f64| (f(a, b + h) - 2.0 * f(a, b) + f(a, b - h)) / (h * h);
        let fxy = |a: f64, b: f64| {
            (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4.0 * h * h)
        };
        Jet3 {
            f: f(0.0, 0.0),
            fx: fx(0.0, 0.0),
            fy: fy(0.0, 0.0),
            fxx: fxx(0.0, 0.0),
            fxy: fxy(0.0, 0.0),
            fyy: fyy(0.0, 0.0),
            fxxx: (fxx(h, 0.0) - fxx(-h, 0.0)) / (2.0 * h),
            fxxy: (fxx(0.0, h) - fxx(0.0, -h)) / (2.0 * h),
            fxyy: (fyy(h, 0.0) - fyy(-h, 0.0)) / (2.0 * h),
            fyyy: (fyy(0.0, h) - fyy(0.0, -h)) / (2.0 * h),
        }
    }

    fn assert_jets_match(spec: &SolutionSpec, p: DomainPoint) {
        let a = spec.jets(p).unwrap();
        let b = fd_jet(spec, p, 1e-3);
        let pairs = [
            ("fx", a.fx, b.fx),
            ("fy", a.fy, b.fy),
            ("fxx", a.fxx, b.fxx),
            ("fxy", a.fxy, b.fxy),
            ("fyy", a.fyy, b.fyy),
            ("fxxx", a.fxxx, b.fxxx),
            ("fxxy", a.fxxy, b.fxxy),
            ("fxyy", a.fxyy, b.fxyy),
            ("fyyy", a.fyyy, b.fyyy),
        ];
        for (name, u, v) in pairs {
            assert!(
                (u - v).abs() <= 1e-4 * (1.0 + v.abs()),
                "{spec} at {p:?}: {name} analytic {u} vs fd {v}"
            );
        }
    }

    #[test]
    fn all_graph_families_match_finite_differences() {
        let specs = [
            SolutionSpec::plane(1.3, -0.2),
            SolutionSpec::arcsin_y(0.5, 0.1).unwrap(),
            SolutionSpec::funnel(0.7, 1.0),
            SolutionSpec::rational_x(-1.4),
            SolutionSpec::arcsin_inv_y(0.5, 0.0),
            SolutionSpec::umbilical(0.3, -0.2, -0.5, 0.4).unwrap(),
            SolutionSpec::horizontal_plane(2.0),
        ];
        let pts = [pt(0.3, 0.9), pt(-0.8, 1.4), pt(1.1, 0.6)];
        for s in &specs {
            for p in pts {
                if s.admissible(p) {
                    assert_jets_match(s, p);
                }
            }
        }
    }

    #[test]
    fn funnel_values() {
        let j = SolutionSpec::funnel(1.0, 0.0).jets(pt(1.0, 1.0)).unwrap();
        assert!((j.f - 2f64.ln()).abs() < 1e-15);
        assert_eq!((j.fx, j.fy), (1.0, 1.0));
        assert_eq!(j.fxx + j.fyy, 0.0);
    }

    #[test]
    fn arcsin_y_boundary_is_rejected() {
        let s = SolutionSpec::arcsin_y(1.0, 0.0).unwrap();
        assert!(matches!(
            s.jets(pt(0.0, 1.0)),
            Err(Error::DomainViolation { .. })
        ));
        assert!(s.jets(pt(0.0, 0.99)).is_ok());
        assert!(SolutionSpec::arcsin_y(0.0, 0.0).is_err());
    }

    #[test]
    fn vertical_families_are_not_graphs() {
        assert!(matches!(
            SolutionSpec::vertical_plane(1.0).jets(pt(0.0, 1.0)),
            Err(Error::NotAGraph(_))
        ));
        let cyl = SolutionSpec::geodesic_cylinder(0.5, 1.0).unwrap();
        assert!(cyl.jets(pt(0.0, 1.0)).is_err());
        let (lo, hi) = cyl.profile_interval().unwrap();
        assert!((lo - (0.5 - 1.25f64.sqrt())).abs() < 1e-6);
        assert!((hi - (0.5 + 1.25f64.sqrt())).abs() < 1e-6);
        assert!(cyl.profile(hi + 0.1).is_err());
        assert!(SolutionSpec::geodesic_cylinder(0.0, -1.0).is_err());
    }

    #[test]
    fn special_umbilical_matches_closed_form() {
        let s = special_umbilical(-1.0, 0.5).unwrap();
        assert_eq!(s.family(), Family::UmbilicalGraph);
        let s = special_umbilical(1.0, 0.0).unwrap();
        let anchor = s.jets(pt(0.0, 2.0)).unwrap().f - special_umbilical_closed_form(1.0, 0.0, 2.0);
        for k in 1..=30 {
            let y = 1.0 + 9.0 * k as f64 / 30.0;
            let d = s.jets(pt(-0.4, y)).unwrap().f - special_umbilical_closed_form(1.0, 0.0, y);
            assert!((d - anchor).abs() < 1e-10);
        }
        assert!(special_umbilical(0.0, 0.0).is_err());
    }

    #[test]
    fn named_construction() {
        let s = SolutionSpec::from_named(Family::Funnel, &[("a", 2.0)]).unwrap();
        assert_eq!(s.params(), vec![("a", 2.0), ("b", 0.0)]);
        assert!(SolutionSpec::from_named(Family::Funnel, &[("c3", 2.0)]).is_err());
        assert!(SolutionSpec::from_named(Family::UmbilicalGraph, &[("c2", 1.0)]).is_err());
        assert_eq!("funnel".parse::<Family>().unwrap(), Family::Funnel);
        assert!("Catenoid".parse::<Family>().is_err());
    }

    #[test]
    fn expected_properties() {
        let p = list_expected_properties(&SolutionSpec::funnel(1.0, 0.0));
        assert!(p.minimal);
        assert_eq!(p.gauss_rank, Some(1));
        assert_eq!(p.complete, Some(true));
        assert_eq!(
            list_expected_properties(&SolutionSpec::rational_x(1.0)).gauss_rank,
            Some(2)
        );
        assert_eq!(
            list_expected_properties(&SolutionSpec::arcsin_inv_y(1.0, 0.0)).complete,
            Some(false)
        );
        assert!(
            list_expected_properties(&SolutionSpec::geodesic_cylinder(0.0, 1.0).unwrap())
                .totally_geodesic
        );
    }

    #[test]
    fn translation_shifts_the_domain() {
        let t = Translated {
            inner: SolutionSpec::rational_x(1.0),
            shift: 2.0,
        };
        let a = t.jet3(pt(2.5, 1.0)).unwrap();
        let b = SolutionSpec::rational_x(1.0).jets(pt(0.5, 1.0)).unwrap();
        assert_eq!(a, b);
    }
}
