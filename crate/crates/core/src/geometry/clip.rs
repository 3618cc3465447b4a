use alloc::vec::Vec;

use super::polygon::{bbox, canonicalize, Polygon, EPS_AREA, EPS_GEOM};
use crate::error::{Error, Result};
use crate::math::Vec2;

/// The closed halfplane `{x : <a, x> ≤ β}` with `|a| = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfplane {
    normal: Vec2,
    offset: f64,
}

impl Halfplane {
    /// Normalizes `(a, β)` so the normal has unit length.
    pub fn new(a: Vec2, beta: f64) -> Result<Halfplane> {
        let n = a.norm();
        if !(n > EPS_GEOM) || !beta.is_finite() {
            return Err(Error::BadParams("halfplane normal must be nonzero"));
        }
        Ok(Halfplane {
            normal: a / n,
            offset: beta / n,
        })
    }

    pub fn normal(&self) -> Vec2 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The closure of the complement, `{<a, x> ≥ β}`.
    pub fn flipped(&self) -> Halfplane {
        Halfplane {
            normal: -self.normal,
            offset: -self.offset,
        }
    }

    #[inline]
    pub fn excess(&self, x: Vec2) -> f64 {
        self.normal.dot(x) - self.offset
    }

    pub fn contains(&self, x: Vec2, tol: f64) -> bool {
        self.excess(x) <= tol
    }
}

/// Sutherland–Hodgman step on a counter-clockwise convex vertex list.
pub(crate) fn clip_points(pts: &[Vec2], normal: Vec2, offset: f64) -> Vec<Vec2> {
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let sa = normal.dot(a) - offset;
        let sb = normal.dot(b) - offset;
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            out.push(a + (b - a) * t);
        }
    }
    out
}

fn finish(pts: Vec<Vec2>, reference_scale2: f64) -> Option<Polygon> {
    if pts.len() < 3 {
        return None;
    }
    let poly = canonicalize(&pts).ok()?;
    if poly.area() < EPS_AREA * reference_scale2 {
        return None;
    }
    Some(poly)
}

fn scale2(p: &Polygon) -> f64 {
    let (lo, hi) = bbox(p.vertices());
    (hi - lo).norm_sq()
}

/// `P ∩ h`, or `None` when the intersection has negligible area.
pub fn clip_halfplane(p: &Polygon, h: &Halfplane) -> Option<Polygon> {
    if p.support(h.normal) <= h.offset {
        return Some(p.clone());
    }
    finish(clip_points(p.vertices(), h.normal, h.offset), scale2(p))
}

/// `P ∩ Q` by successive clipping of `P` against the edges of `Q`.
pub fn intersect(p: &Polygon, q: &Polygon) -> Option<Polygon> {
    let mut pts: Vec<Vec2> = p.vertices().to_vec();
    for (a, b) in q.edges() {
        let e = b - a;
        let normal = Vec2 { x: e.y, y: -e.x }.normalized();
        pts = clip_points(&pts, normal, normal.dot(a));
        if pts.len() < 3 {
            return None;
        }
    }
    finish(pts, scale2(p).max(scale2(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polygon::unit_square;
    use crate::math::vec2;

    #[test]
    fn left_half_of_square() {
        let h = Halfplane::new(vec2(1.0, 0.0), 0.0).unwrap();
        let left = clip_halfplane(&unit_square(), &h).unwrap();
        assert!((left.area() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn beyond_support_is_identity() {
        let h = Halfplane::new(vec2(1.0, 0.0), 1.0).unwrap();
        assert_eq!(clip_halfplane(&unit_square(), &h).unwrap(), unit_square());
        let far = Halfplane::new(vec2(0.0, 3.0), 7.0).unwrap();
        assert_eq!(clip_halfplane(&unit_square(), &far).unwrap(), unit_square());
    }

    #[test]
    fn empty_when_outside() {
        let h = Halfplane::new(vec2(1.0, 0.0), -1.0).unwrap();
        assert!(clip_halfplane(&unit_square(), &h).is_none());
        let h = Halfplane::new(vec2(1.0, 0.0), -2.0).unwrap();
        assert!(clip_halfplane(&unit_square(), &h).is_none());
    }

    #[test]
    fn normalization() {
        let h = Halfplane::new(vec2(0.0, 2.0), 4.0).unwrap();
        assert_eq!(h.normal(), vec2(0.0, 1.0));
        assert_eq!(h.offset(), 2.0);
        assert!(Halfplane::new(Vec2::ZERO, 1.0).is_err());
    }

    #[test]
    fn intersect_self_and_shift() {
        let sq = unit_square();
        assert_eq!(intersect(&sq, &sq).unwrap(), sq);
        let shifted = sq.translate(vec2(1.0, 0.0));
        let r = intersect(&sq, &shifted).unwrap();
        assert!((r.area() - 2.0).abs() < 1e-15);
        assert!(intersect(&sq, &sq.translate(vec2(3.0, 0.0))).is_none());
    }
}
