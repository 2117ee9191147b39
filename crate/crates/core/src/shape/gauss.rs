//! Gauss map `(x, y) ↦ ξ(x, y)` in frame components and the rank of its
//! differential.

use nalgebra::{Matrix3x2, SMatrix};

use super::{unit_normal, GraphField, Jet2};
use crate::ambient::{DomainPoint, FrameVector};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::sampling::Rect;
use crate::series::Series;

/// A singular value counts towards the rank when it exceeds this fraction of
/// the largest singular value seen over the sample.
pub const GAUSS_RANK_THRESHOLD: f64 = 1e-6;

/// Local PCA of Gauss-map samples: spread ratio `σ₂/σ₁` below this reads as
/// a one-dimensional image.
pub const PCA_RANK1_MAX_RATIO: f64 = 1e-3;
/// Spread ratio above this reads as a two-dimensional image.
pub const PCA_RANK2_MIN_RATIO: f64 = 1e-2;
/// Default relative radius of the PCA patches. The spread ratio of a rank-one
/// image shrinks linearly with the radius; that of a rank-two image does not.
pub const PCA_PATCH_RADIUS: f64 = 1e-4;

const FD_STEP: f64 = 1e-5;
/// Singular values below this are finite-difference rounding noise.
pub const GAUSS_RANK_NOISE_FLOOR: f64 = 1e-8;
const MIN_SAMPLES_PER_SIDE: usize = 5;

pub fn gauss_map(p: DomainPoint, j: &Jet2) -> FrameVector {
    unit_normal(p, j)
}

/// Exact differential of the Gauss map, columns `∂ξ/∂x` and `∂ξ/∂y`.
pub fn gauss_map_differential(p: DomainPoint, j: &Jet2) -> Matrix3x2<f64> {
    let fx = Series::linear(j.fx, j.fxx, j.fxy);
    let fy = Series::linear(j.fy, j.fxy, j.fyy);
    let y = Series::var_y(p.y());
    let s = (y * y * (fx * fx + fy * fy) + 1.0).sqrt();
    let c = [-(y * fx) / s, -(y * fy) / s, s.recip()];
    Matrix3x2::from_fn(|r, col| if col == 0 { c[r].dx() } else { c[r].dy() })
}

/// Central-difference differential of the Gauss map with step
/// `1e-5 · max(1, |coordinate|)`.
pub fn gauss_map_differential_fd(field: &dyn GraphField, p: DomainPoint) -> Result<Matrix3x2<f64>> {
    let at = |dx: f64, dy: f64| -> Result<FrameVector> {
        let q = p.offset(dx, dy)?;
        if !field.admits(q) {
            return Err(Error::DomainViolation {
                context: "Gauss-map stencil".into(),
                x: q.x(),
                y: q.y(),
            });
        }
        Ok(gauss_map(q, &field.jet2(q)?))
    };
    let hx = FD_STEP * p.x().abs().max(1.0);
    let hy = FD_STEP * p.y().abs().max(1.0);
    let dx = (1.0 / (2.0 * hx)) * (at(hx, 0.0)? - at(-hx, 0.0)?);
    let dy = (1.0 / (2.0 * hy)) * (at(0.0, hy)? - at(0.0, -hy)?);
    Ok(Matrix3x2::new(dx.c1, dy.c1, dx.c2, dy.c2, dx.c3, dy.c3))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussRank {
    pub rank: u8,
    /// Largest singular value over all samples.
    pub sigma_max: f64,
    /// Largest `σ₂/σ_max` over all samples.
    pub max_second_ratio: f64,
    pub samples: usize,
}

pub fn gauss_rank(field: &dyn GraphField, region: Rect, per_side: usize) -> Result<GaussRank> {
    gauss_rank_with(field, region, per_side, Exec::default())
}

/// Rank of the Gauss-map differential, reported as the maximum over an
/// interior `per_side × per_side` sample of `region`.
pub fn gauss_rank_with(
    field: &dyn GraphField,
    region: Rect,
    per_side: usize,
    exec: Exec,
) -> Result<GaussRank> {
    if per_side < MIN_SAMPLES_PER_SIDE {
        return Err(Error::InvalidParameters(format!(
            "gauss rank needs at least {MIN_SAMPLES_PER_SIDE}x{MIN_SAMPLES_PER_SIDE} samples"
        )));
    }
    let pts = region.interior_grid(per_side);
    for p in &pts {
        if !field.admits(*p) {
            return Err(Error::DomainViolation {
                context: "Gauss-rank sample".into(),
                x: p.x(),
                y: p.y(),
            });
        }
    }
    let sv = exec.try_map(pts.len(), |k| {
        let d = gauss_map_differential_fd(field, pts[k])?;
        let s = d.singular_values();
        Ok::<_, Error>((s[0].max(s[1]), s[0].min(s[1])))
    })?;
    let sigma_max = sv.iter().fold(0.0_f64, |m, s| m.max(s.0));
    let cutoff = (GAUSS_RANK_THRESHOLD * sigma_max).max(GAUSS_RANK_NOISE_FLOOR);
    let rank = sv
        .iter()
        .map(|&(a, b)| (a > cutoff) as u8 + (b > cutoff) as u8)
        .max()
        .unwrap_or(0);
    let max_second_ratio = if sigma_max > 0.0 {
        sv.iter().fold(0.0_f64, |m, s| m.max(s.1)) / sigma_max
    } else {
        0.0
    };
    Ok(GaussRank {
        rank,
        sigma_max,
        max_second_ratio,
        samples: pts.len(),
    })
}

/// `(σ₂/σ₁, σ₁)` of the centred sample cloud; `(0, 0)` for a single point
/// image.
pub fn pca_spread_ratio(samples: &[FrameVector]) -> (f64, f64) {
    if samples.is_empty() {
        return (0.0, 0.0);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().fold(FrameVector::ZERO, |a, s| a + *s);
    let mean = (1.0 / n) * mean;
    let mut cov = SMatrix::<f64, 3, 3>::zeros();
    for s in samples {
        let d = nalgebra::Vector3::from((*s - mean).to_array());
        cov += d * d.transpose();
    }
    let mut ev: Vec<f64> = cov
        .symmetric_eigenvalues()
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    if ev[0] == 0.0 {
        (0.0, 0.0)
    } else {
        (ev[1] / ev[0], ev[0])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PcaRank {
    /// `None` when the largest ratio falls between the two thresholds.
    pub rank: Option<u8>,
    pub max_ratio: f64,
    pub max_spread: f64,
}

/// Rank of the Gauss-map image read off local PCA: around each of
/// `anchors × anchors` interior points, a `patch × patch` grid of radius
/// `radius · max(1, |coordinate|)` is mapped by ξ and the spread ratio of the
/// image cloud is measured. The largest ratio over anchors decides.
pub fn gauss_pca_rank(
    field: &dyn GraphField,
    region: Rect,
    anchors: usize,
    patch: usize,
    radius: f64,
    exec: Exec,
) -> Result<PcaRank> {
    if patch < 2 {
        return Err(Error::InvalidParameters(
            "PCA patch needs at least 2x2 samples".into(),
        ));
    }
    let pts = region.interior_grid(anchors);
    let stats = exec.try_map(pts.len(), |k| {
        let c = pts[k];
        let rx = radius * c.x().abs().max(1.0);
        let ry = radius * c.y().abs().max(1.0);
        let mut cloud = Vec::with_capacity(patch * patch);
        for j in 0..patch {
            for i in 0..patch {
                let s = 2.0 * i as f64 / (patch - 1) as f64 - 1.0;
                let t = 2.0 * j as f64 / (patch - 1) as f64 - 1.0;
                let q = c.offset(s * rx, t * ry)?;
                if !field.admits(q) {
                    return Err(Error::DomainViolation {
                        context: "Gauss-map PCA patch".into(),
                        x: q.x(),
                        y: q.y(),
                    });
                }
                cloud.push(gauss_map(q, &field.jet2(q)?));
            }
        }
        Ok::<_, Error>(pca_spread_ratio(&cloud))
    })?;
    let max_ratio = stats.iter().fold(0.0_f64, |m, s| m.max(s.0));
    let max_spread = stats.iter().fold(0.0_f64, |m, s| m.max(s.1));
    let rank = if max_spread == 0.0 {
        Some(0)
    } else if max_ratio < PCA_RANK1_MAX_RATIO {
        Some(1)
    } else if max_ratio > PCA_RANK2_MIN_RATIO {
        Some(2)
    } else {
        None
    };
    Ok(PcaRank {
        rank,
        max_ratio,
        max_spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::SeriesField;

    #[test]
    fn analytic_and_fd_differentials_agree() {
        let field = SeriesField::new(|x: Series, y: Series| x / (x * x + y * y) + y * 0.2);
        let p = DomainPoint::new(0.4, 0.9).unwrap();
        let a = gauss_map_differential(p, &field.jet2(p).unwrap());
        let b = gauss_map_differential_fd(&field, p).unwrap();
        assert!((a - b).amax() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn constant_field_has_rank_zero() {
        let field = SeriesField::new(|_x: Series, _y: Series| Series::constant(2.0));
        let region = Rect::new(0.0, 1.0, 1.0, 2.0).unwrap();
        let r = gauss_rank(&field, region, 5).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.sigma_max, 0.0);
        let pca = gauss_pca_rank(&field, region, 3, 5, 1e-3, Exec::Sequential).unwrap();
        assert_eq!(pca.rank, Some(0));
    }

    #[test]
    fn too_few_samples_rejected() {
        let field = SeriesField::new(|x: Series, _y: Series| x);
        let region = Rect::new(0.0, 1.0, 1.0, 2.0).unwrap();
        assert!(gauss_rank(&field, region, 4).is_err());
    }

    #[test]
    fn pca_of_collinear_points() {
        let pts: Vec<_> = (0..10)
            .map(|k| FrameVector::new(k as f64, 2.0 * k as f64, 1.0))
            .collect();
        let (ratio, spread) = pca_spread_ratio(&pts);
        assert!(ratio < 1e-12);
        assert!(spread > 0.0);
    }
}
