use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::math::{sqrt, vec2, Vec2};

/// Predicate tolerance for orientation and interiority tests.
pub const EPS_GEOM: f64 = 1e-10;
/// Relative area threshold below which a clipped polygon counts as empty.
pub const EPS_AREA: f64 = 1e-14;

/// A convex polygon in canonical form.
///
/// Vertices are strictly convex, counter-clockwise, and the list starts at
/// the lexicographically smallest vertex, so two polygons describing the same
/// body compare vertex by vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

fn lex_cmp(a: &Vec2, b: &Vec2) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// Convex hull of `points` in canonical order.
pub fn canonicalize(points: &[Vec2]) -> Result<Polygon> {
    if points.len() < 3 || points.iter().any(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput);
    }
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(lex_cmp);
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateInput);
    }

    let (lo, hi) = bbox(&pts);
    let scale2 = (hi - lo).norm_sq();
    let thresh = EPS_GEOM * scale2;
    let left_turn = |a: Vec2, b: Vec2, c: Vec2| (b - a).cross(c - a) > thresh;

    // Andrew's monotone chain; the lower chain starts at the lexicographic minimum.
    let mut hull: Vec<Vec2> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && !left_turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !left_turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    if hull.len() < 3 {
        return Err(Error::DegenerateInput);
    }
    let poly = Polygon { vertices: hull };
    if !(poly.area() > EPS_AREA * scale2) {
        return Err(Error::DegenerateInput);
    }
    Ok(poly)
}

pub(crate) fn bbox(pts: &[Vec2]) -> (Vec2, Vec2) {
    let mut lo = vec2(f64::INFINITY, f64::INFINITY);
    let mut hi = vec2(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

impl Polygon {
    /// Canonical polygon from arbitrary points (their convex hull).
    pub fn new(points: &[Vec2]) -> Result<Polygon> {
        canonicalize(points)
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Polygon> {
        let pts: Vec<Vec2> = points.iter().map(|&(x, y)| vec2(x, y)).collect();
        canonicalize(&pts)
    }

    #[inline]
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edges `(v_i, v_{i+1})` in counter-clockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Outward unit normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Vec2 {
        let e = self.vertex(i + 1) - self.vertex(i);
        vec2(e.y, -e.x).normalized()
    }

    /// Area and centroid via the shoelace formula, taken relative to the
    /// first vertex to limit cancellation.
    pub fn area_centroid(&self) -> (f64, Vec2) {
        let o = self.vertices[0];
        let mut twice_area = 0.0;
        let mut moment = Vec2::ZERO;
        for (a, b) in self.edges() {
            let (da, db) = (a - o, b - o);
            let c = da.cross(db);
            twice_area += c;
            moment += (da + db) * c;
        }
        (0.5 * twice_area, o + moment / (3.0 * twice_area))
    }

    pub fn area(&self) -> f64 {
        let o = self.vertices[0];
        0.5 * self.edges().map(|(a, b)| (a - o).cross(b - o)).sum::<f64>()
    }

    pub fn centroid(&self) -> Vec2 {
        self.area_centroid().1
    }

    /// Support function `h(u) = max <u, v>`.
    pub fn support(&self, u: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Vertex attaining the support value in direction `u`.
    pub fn support_point(&self, u: Vec2) -> Vec2 {
        let mut best = self.vertices[0];
        let mut best_val = best.dot(u);
        for &v in &self.vertices[1..] {
            let val = v.dot(u);
            if val > best_val {
                best = v;
                best_val = val;
            }
        }
        best
    }

    pub fn diam(&self) -> f64 {
        let mut d2: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d2 = d2.max((*a - *b).norm_sq());
            }
        }
        sqrt(d2)
    }

    /// Signed distance from `x` to the boundary: positive inside.
    pub fn boundary_distance(&self, x: Vec2) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let nrm = self.edge_normal(i);
                nrm.dot(self.vertices[i] - x)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `x` lies in the polygon, allowing `tol` outside each edge.
    pub fn contains(&self, x: Vec2, tol: f64) -> bool {
        self.boundary_distance(x) >= -tol
    }

    /// Parameter `t > 0` at which `origin + t·dir` leaves the polygon.
    /// `origin` must be interior.
    pub fn ray_exit(&self, origin: Vec2, dir: Vec2) -> f64 {
        let n = self.vertices.len();
        let mut t_exit = f64::INFINITY;
        for i in 0..n {
            let nrm = self.edge_normal(i);
            let rate = nrm.dot(dir);
            if rate > 0.0 {
                let slack = nrm.dot(self.vertices[i] - origin);
                t_exit = t_exit.min(slack / rate);
            }
        }
        t_exit
    }

    pub fn translate(&self, t: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Uniform scaling about the origin by a positive factor.
    pub fn scale(&self, s: f64) -> Polygon {
        assert!(s > 0.0, "scale factor must be positive");
        Polygon {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
        }
    }

    /// Point reflection `x ↦ 2c − x`.
    pub fn reflect(&self, c: Vec2) -> Polygon {
        let pts: Vec<Vec2> = self.vertices.iter().map(|&v| c * 2.0 - v).collect();
        // a point reflection keeps orientation; only the starting vertex moves
        canonical_rotation(pts)
    }

    /// Vertex-list comparison of canonical forms.
    pub fn approx_eq(&self, other: &Polygon, tol: f64) -> bool {
        self.len() == other.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| a.dist(*b) <= tol)
    }
}

/// Rotate a counter-clockwise strictly convex list so it starts at the
/// lexicographic minimum.
pub(crate) fn canonical_rotation(mut pts: Vec<Vec2>) -> Polygon {
    let start = pts
        .iter()
        .enumerate()
        .min_by(|a, b| lex_cmp(a.1, b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    pts.rotate_left(start);
    Polygon { vertices: pts }
}

/// Regular `m`-gon inscribed in the unit circle, first vertex at angle 0.
pub fn regular_polygon(m: usize) -> Result<Polygon> {
    if m < 3 {
        return Err(Error::BadParams("regular polygon needs at least 3 vertices"));
    }
    let pts: Vec<Vec2> = (0..m)
        .map(|k| Vec2::from_angle(2.0 * crate::math::PI * k as f64 / m as f64))
        .collect();
    canonicalize(&pts)
}

/// The square `[-1, 1]²`.
pub fn unit_square() -> Polygon {
    canonicalize(&[vec2(-1.0, -1.0), vec2(1.0, -1.0), vec2(1.0, 1.0), vec2(-1.0, 1.0)])
        .expect("square is valid")
}

/// The cross-polytope `conv{±e₁, ±e₂}`.
pub fn cross_polytope() -> Polygon {
    canonicalize(&[vec2(1.0, 0.0), vec2(0.0, 1.0), vec2(-1.0, 0.0), vec2(0.0, -1.0)])
        .expect("cross-polytope is valid")
}

/// The simplex `conv{0, e₁, e₂}`.
pub fn standard_simplex() -> Polygon {
    canonicalize(&[vec2(0.0, 0.0), vec2(1.0, 0.0), vec2(0.0, 1.0)]).expect("simplex is valid")
}
