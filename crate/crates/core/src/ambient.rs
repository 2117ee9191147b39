//! The ambient space H² × R in the upper half-plane model.
//!
//! Coordinates are `(x, y, z)` with `y > 0` and metric
//! `g = (dx² + dy²)/y² + dz²`. Vectors are usually expressed in the
//! orthonormal left-invariant frame
//!
//! ```text
//! E1 = y ∂x,   E2 = y ∂y,   E3 = ∂z
//! ```
//!
//! Christoffel symbols are indexed 0, 1, 2 for `x, y, z` internally; reports
//! and CSV output use 1-based labels.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix3;

use crate::error::{Error, Result};

/// A point `(x, y)` of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainPoint {
    x: f64,
    y: f64,
}

impl DomainPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if y > 0.0 && x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(Error::InvalidPoint { x, y })
        }
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    /// Shifted copy; fails if the shifted point leaves the half-plane.
    pub fn offset(&self, dx: f64, dy: f64) -> Result<Self> {
        Self::new(self.x + dx, self.y + dy)
    }
}

/// Components `(c1, c2, c3)` of a tangent vector with respect to the
/// orthonormal frame `E1, E2, E3`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrameVector {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl FrameVector {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const E1: Self = Self::new(1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 1.0, 0.0);
    pub const E3: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    /// `g(self, other)`; the frame is orthonormal.
    pub fn dot(&self, other: &Self) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Coordinate components `(V^x, V^y, V^z)` at `p`.
    pub fn to_coordinates(self, p: DomainPoint) -> [f64; 3] {
        [p.y * self.c1, p.y * self.c2, self.c3]
    }

    pub fn from_coordinates(p: DomainPoint, v: [f64; 3]) -> Self {
        Self::new(v[0] / p.y, v[1] / p.y, v[2])
    }

    /// Rotation by +π/2 in the horizontal (H²) plane: `J(a E1 + b E2) = -b E1 + a E2`.
    pub fn rotate_horizontal(self) -> Self {
        Self::new(-self.c2, self.c1, 0.0)
    }
}

impl Add for FrameVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }
}

impl Sub for FrameVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)
    }
}

impl Neg for FrameVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c1, -self.c2, -self.c3)
    }
}

impl Mul<FrameVector> for f64 {
    type Output = FrameVector;
    fn mul(self, v: FrameVector) -> FrameVector {
        FrameVector::new(self * v.c1, self * v.c2, self * v.c3)
    }
}

/// `gamma[i][j][k]` is Γᵏᵢⱼ with respect to the coordinate fields `∂x, ∂y, ∂z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChristoffelTable {
    pub gamma: [[[f64; 3]; 3]; 3],
}

impl ChristoffelTable {
    /// Γᵏᵢⱼ with 1-based indices, as printed in reports.
    pub fn get_1based(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[i - 1][j - 1][k - 1]
    }
}

/// Metric tensor in the coordinate basis: `diag(1/y², 1/y², 1)`.
pub fn metric_tensor(p: DomainPoint) -> Matrix3<f64> {
    let s = 1.0 / (p.y * p.y);
    Matrix3::from_diagonal(&nalgebra::Vector3::new(s, s, 1.0))
}

/// Non-zero symbols: Γ¹₁₂ = Γ¹₂₁ = Γ²₂₂ = -1/y and Γ²₁₁ = 1/y.
pub fn christoffels(p: DomainPoint) -> ChristoffelTable {
    let inv = 1.0 / p.y;
    let mut gamma = [[[0.0; 3]; 3]; 3];
    gamma[0][1][0] = -inv;
    gamma[1][0][0] = -inv;
    gamma[1][1][1] = -inv;
    gamma[0][0][1] = inv;
    ChristoffelTable { gamma }
}

/// Geodesic curvature in H² of the curve `x ↦ (x, y(x))`, given `y`, `y'` and
/// `y''` at one point:
///
/// ```text
/// k_g = (y y'' + y'² + 1) / (1 + y'²)^{3/2}
/// ```
///
/// The orientation is the one given by [`FrameVector::rotate_horizontal`]:
/// horizontal lines (horocycles) get `k_g = +1` and semicircles centred on the
/// boundary axis get `k_g = 0`.
pub fn geodesic_curvature_graph_curve(y: f64, yp: f64, ypp: f64) -> f64 {
    debug_assert!(y > 0.0);
    let s = 1.0 + yp * yp;
    (y * ypp + yp * yp + 1.0) / (s * s.sqrt())
}

/// First-order data of a frame-valued vector field at a point: its frame
/// components and their partial derivatives along `∂x`, `∂y`, `∂z`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FrameFieldJet {
    pub value: FrameVector,
    /// `partials[i]` holds `∂c/∂xᵢ` for the three frame components.
    pub partials: [FrameVector; 3],
}

impl FrameFieldJet {
    pub fn constant(value: FrameVector) -> Self {
        Self {
            value,
            partials: [FrameVector::ZERO; 3],
        }
    }
}

/// Levi-Civita derivative `∇_D V` at `p`, returned in frame components.
///
/// The field is handed over as frame components plus their coordinate
/// partials; the computation converts to coordinate components
/// `V = y c1 ∂x + y c2 ∂y + c3 ∂z`, applies
/// `(∇_D V)ᵏ = Dⁱ ∂ᵢVᵏ + Γᵏᵢⱼ Dⁱ Vʲ` and converts back.
pub fn covariant_derivative(
    p: DomainPoint,
    field: &FrameFieldJet,
    direction: FrameVector,
) -> FrameVector {
    let y = p.y;
    let v = field.value.to_coordinates(p);
    let d = direction.to_coordinates(p);

    // ∂ᵢVᵏ; the frame scaling y contributes only through ∂y.
    let mut dv = [[0.0; 3]; 3];
    for (i, row) in dv.iter_mut().enumerate() {
        let pc = field.partials[i];
        row[0] = y * pc.c1;
        row[1] = y * pc.c2;
        row[2] = pc.c3;
        if i == 1 {
            row[0] += field.value.c1;
            row[1] += field.value.c2;
        }
    }

    let gamma = christoffels(p).gamma;
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..3 {
            acc += d[i] * dv[i][k];
            for j in 0..3 {
                acc += gamma[i][j][k] * d[i] * v[j];
            }
        }
        *o = acc;
    }
    FrameVector::from_coordinates(p, out)
}

/// Acceleration `∇_{γ'}γ'` of the graph curve `x ↦ (x, y(x))`, built from
/// [`covariant_derivative`].
pub fn graph_curve_acceleration(p: DomainPoint, yp: f64, ypp: f64) -> FrameVector {
    let y = p.y;
    let velocity = FrameVector::new(1.0 / y, yp / y, 0.0);
    let field = FrameFieldJet {
        value: velocity,
        partials: [
            FrameVector::new(-yp / (y * y), (ypp * y - yp * yp) / (y * y), 0.0),
            FrameVector::ZERO,
            FrameVector::ZERO,
        ],
    };
    covariant_derivative(p, &field, velocity)
}

/// Geodesic curvature from the connection: `g(∇_{γ'}γ', Jγ') / |γ'|³`.
pub fn geodesic_curvature_via_connection(p: DomainPoint, yp: f64, ypp: f64) -> f64 {
    let y = p.y;
    let velocity = FrameVector::new(1.0 / y, yp / y, 0.0);
    let acc = graph_curve_acceleration(p, yp, ypp);
    let n = velocity.norm();
    acc.dot(&velocity.rotate_horizontal()) / (n * n * n)
}
