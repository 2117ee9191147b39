//! Vertical surfaces: cylinders `Y(u, v) = (u, a(u), v)` over a curve of H²
//! and the planes `Z(u, v) = (c, u, v)`.
//!
//! Second-form coefficients are computed from the connection,
//! `L = -g(∇_{X_u} ξ, X_u)` and so on, rather than from closed forms.

use crate::ambient::{covariant_derivative, DomainPoint, FrameFieldJet, FrameVector};
use crate::error::{Error, Result};

/// Values `a(u), a'(u), a''(u)` of the profile of `Y(u, v) = (u, a(u), v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerticalProfile {
    pub a: f64,
    pub ap: f64,
    pub app: f64,
}

impl VerticalProfile {
    pub fn new(a: f64, ap: f64, app: f64) -> Result<Self> {
        if a > 0.0 && a.is_finite() {
            Ok(Self { a, ap, app })
        } else {
            Err(Error::InvalidParameters(format!(
                "profile height a = {a} must be positive"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerticalSurfaceData {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    pub h: f64,
    pub normal: FrameVector,
}

impl VerticalSurfaceData {
    pub fn max_second_form(&self) -> f64 {
        self.l.abs().max(self.m.abs()).max(self.n.abs())
    }
}

fn assemble(
    p: DomainPoint,
    xi: &FrameFieldJet,
    xu: FrameVector,
    xv: FrameVector,
) -> VerticalSurfaceData {
    let d_u = covariant_derivative(p, xi, xu);
    let d_v = covariant_derivative(p, xi, xv);
    let (e, f, g) = (xu.dot(&xu), xu.dot(&xv), xv.dot(&xv));
    let (l, m, n) = (-d_u.dot(&xu), -d_u.dot(&xv), -d_v.dot(&xv));
    VerticalSurfaceData {
        e,
        f,
        g,
        l,
        m,
        n,
        h: (g * l - 2.0 * f * m + e * n) / (2.0 * (e * g - f * f)),
        normal: xi.value,
    }
}

/// Fundamental forms and mean curvature of `Y(u, v) = (u, a(u), v)` at
/// parameter `u`, with normal
/// `ξ = a'/√(1 + a'²) E1 - 1/√(1 + a'²) E2`.
pub fn vertical_surface_data(vp: &VerticalProfile, u: f64) -> Result<VerticalSurfaceData> {
    let p = DomainPoint::new(u, vp.a)?;
    let VerticalProfile { a, ap, app } = *vp;
    let s = (1.0 + ap * ap).sqrt();
    let s3 = s * s * s;
    // ξ only varies along the profile; its frame components depend on u = x.
    let xi = FrameFieldJet {
        value: FrameVector::new(ap / s, -1.0 / s, 0.0),
        partials: [
            FrameVector::new(app / s3, ap * app / s3, 0.0),
            FrameVector::ZERO,
            FrameVector::ZERO,
        ],
    };
    let xu = FrameVector::new(1.0 / a, ap / a, 0.0);
    Ok(assemble(p, &xi, xu, FrameVector::E3))
}

/// Fundamental forms of the plane `Z(u, v) = (c, u, v)` at height `u > 0`,
/// normal `E1`.
pub fn vertical_plane_data(c: f64, u: f64) -> Result<VerticalSurfaceData> {
    let p = DomainPoint::new(c, u)?;
    let xi = FrameFieldJet::constant(FrameVector::E1);
    let xu = FrameVector::new(0.0, 1.0 / u, 0.0);
    Ok(assemble(p, &xi, xu, FrameVector::E3))
}

/// `a a'' + a'² + 1`, which vanishes exactly for profiles of totally
/// geodesic cylinders.
pub fn cylinder_ode_residual(vp: &VerticalProfile) -> f64 {
    vp.a * vp.app + vp.ap * vp.ap + 1.0
}
