//! Rectangular regions of the half-plane and deterministic point sets on them.

use std::fmt;
use std::str::FromStr;

use crate::ambient::DomainPoint;
use crate::error::{Error, Result};

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]` with `y0 > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let ok = [x0, x1, y0, y1].iter().all(|v| v.is_finite()) && x0 < x1 && y0 < y1 && y0 > 0.0;
        if ok {
            Ok(Self { x0, x1, y0, y1 })
        } else {
            Err(Error::InvalidParameters(format!(
                "region [{x0},{x1}]x[{y0},{y1}] must be non-empty with y0 > 0"
            )))
        }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn contains(&self, p: DomainPoint) -> bool {
        (self.x0..=self.x1).contains(&p.x()) && (self.y0..=self.y1).contains(&p.y())
    }

    /// Point at relative coordinates `(s, t) ∈ [0, 1]²`.
    pub fn at(&self, s: f64, t: f64) -> DomainPoint {
        DomainPoint::new(self.x0 + s * self.width(), self.y0 + t * self.height())
            .expect("rectangle lies in the half-plane")
    }

    /// Cell-centred `n × n` grid of interior points, row-major in `y`.
    pub fn interior_grid(&self, n: usize) -> Vec<DomainPoint> {
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                out.push(self.at((i as f64 + 0.5) / n as f64, (j as f64 + 0.5) / n as f64));
            }
        }
        out
    }

    /// First `n` points of the base-(2, 3) Halton sequence mapped into the
    /// rectangle, skipping the origin of the sequence.
    pub fn halton(&self, n: usize) -> Vec<DomainPoint> {
        (1..=n)
            .map(|k| self.at(radical_inverse(k, 2), radical_inverse(k, 3)))
            .collect()
    }

    /// The first `n` Halton points accepted by `admit`; gives up after
    /// `64 n` candidates.
    pub fn halton_filtered(
        &self,
        n: usize,
        admit: impl Fn(DomainPoint) -> bool,
    ) -> Result<Vec<DomainPoint>> {
        let mut out = Vec::with_capacity(n);
        for k in 1..=(64 * n.max(1)) {
            let p = self.at(radical_inverse(k, 2), radical_inverse(k, 3));
            if admit(p) {
                out.push(p);
                if out.len() == n {
                    return Ok(out);
                }
            }
        }
        Err(Error::InvalidParameters(format!(
            "region {self} contains too few admissible points ({} of {n})",
            out.len()
        )))
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.x0, self.x1, self.y0, self.y1)
    }
}

impl FromStr for Rect {
    type Err = Error;

    /// Parses `[x0,x1]x[y0,y1]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("region {s:?} is not of the form [x0,x1]x[y0,y1]"));
        let s = s.trim();
        let (a, b) = s.split_once("]x[").ok_or_else(bad)?;
        let a = a.strip_prefix('[').ok_or_else(bad)?;
        let b = b.strip_suffix(']').ok_or_else(bad)?;
        let pair = |t: &str| -> Result<(f64, f64)> {
            let (u, v) = t.split_once(',').ok_or_else(bad)?;
            Ok((
                u.trim().parse().map_err(|_| bad())?,
                v.trim().parse().map_err(|_| bad())?,
            ))
        };
        let (x0, x1) = pair(a)?;
        let (y0, y1) = pair(b)?;
        Rect::new(x0, x1, y0, y1)
    }
}

pub fn radical_inverse(mut k: usize, base: usize) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut r = 0.0;
    while k > 0 {
        r += (k % base) as f64 * inv;
        k /= base;
        inv /= base as f64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_region() {
        let r: Rect = "[1,2]x[0.5,1.5]".parse().unwrap();
        assert_eq!(r, Rect::new(1.0, 2.0, 0.5, 1.5).unwrap());
        assert!("[1,2]x[-1,1]".parse::<Rect>().is_err());
        assert!("1,2x3,4".parse::<Rect>().is_err());
        assert_eq!(r.to_string().parse::<Rect>().unwrap(), r);
    }

    #[test]
    fn halton_stays_inside() {
        let r = Rect::new(-1.0, 1.0, 0.1, 0.3).unwrap();
        let pts = r.halton(500);
        assert_eq!(pts.len(), 500);
        assert!(pts.iter().all(|p| r.contains(*p)));
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
    }
}
