//! Affine invariant set maps, approximated by polygons on a direction grid.
//!
//! The floating body intersects one halfplane per direction. The other maps
//! are sublevel or superlevel sets of a function that is monotone along rays
//! from a distinguished interior point; each ray's crossing is bracketed and
//! refined, and the region is the polygon through the crossings.

use alloc::vec::Vec;

use crate::ellipse::{john_ellipse, max_centered_area};
use crate::error::{Error, Result};
use crate::geometry::{canonicalize, clip_halfplane, polar_about, AffineMap, Halfplane, Polygon};
use crate::math::{Vec2, PI};
use crate::points::{santalo_point, symcore_point, symmetric_core_area};

/// Fewest directions accepted by any set map.
pub const MIN_DIRECTIONS: usize = 64;
/// Default number of directions.
pub const DEFAULT_DIRECTIONS: usize = 256;

/// An invariant set map with its parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SetMap {
    /// Floating body `K_δ`, `0 ≤ δ < 4/9`.
    Floating(f64),
    /// Illumination body `K^δ = {x : |conv(x, K)| ≤ (1+δ)|K|}`, `δ ≥ 0`.
    Illumination(f64),
    /// `S_c = {z : |K^z| ≤ (1+c)|K^{s(K)}|}`, `c > 0`.
    Santalo(f64),
    /// `J_c = {x : f_K(x) ≥ c·max f_K}`, `0 < c < 1`.
    John(f64),
    /// `M_c = {x : |K ∩ (2x−K)| ≥ c·|K ∩ (2m(K)−K)|}`, `0 < c < 1`.
    Symcore(f64),
}

/// A polygonal approximation of a set map's value.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub polygon: Polygon,
    /// Ray origin, absent for the floating body.
    pub center: Option<Vec2>,
    pub rays: usize,
    pub param: f64,
    /// Engineering bound `π·diam(K)/m` on the discretization error.
    pub grid_error: f64,
}

/// `m` unit vectors at angles `2πk/m`.
pub fn uniform_directions(m: usize) -> Vec<Vec2> {
    (0..m)
        .map(|k| Vec2::from_angle(2.0 * PI * k as f64 / m as f64))
        .collect()
}

impl SetMap {
    pub fn name(&self) -> &'static str {
        match self {
            SetMap::Floating(_) => "floating",
            SetMap::Illumination(_) => "illumination",
            SetMap::Santalo(_) => "santalo",
            SetMap::John(_) => "john",
            SetMap::Symcore(_) => "symcore",
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            SetMap::Floating(v)
            | SetMap::Illumination(v)
            | SetMap::Santalo(v)
            | SetMap::John(v)
            | SetMap::Symcore(v) => v,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            SetMap::Floating(d) => (0.0..4.0 / 9.0).contains(&d),
            SetMap::Illumination(d) => d >= 0.0 && d.is_finite(),
            SetMap::Santalo(c) => c > 0.0 && c.is_finite(),
            SetMap::John(c) | SetMap::Symcore(c) => c > 0.0 && c < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BadParams("set map parameter out of range"))
        }
    }

    /// Evaluates on `m` uniform directions.
    pub fn apply(&self, p: &Polygon, m: usize) -> Result<Region> {
        self.apply_with_directions(p, &uniform_directions(m))
    }

    /// Evaluates on the given directions: halfplane normals for the floating
    /// body, ray directions for the others.
    pub fn apply_with_directions(&self, p: &Polygon, dirs: &[Vec2]) -> Result<Region> {
        self.validate()?;
        if dirs.len() < MIN_DIRECTIONS {
            return Err(Error::BadParams("at least 64 directions are required"));
        }
        let (polygon, center) = match *self {
            SetMap::Floating(d) => (floating(p, d, dirs)?, None),
            SetMap::Illumination(d) => {
                let g = p.centroid();
                (illumination(p, d, g, dirs)?, Some(g))
            }
            SetMap::Santalo(c) => {
                let s = santalo_point(p)?;
                (santalo_level(p, c, s, dirs)?, Some(s))
            }
            SetMap::John(c) => {
                let e = john_ellipse(p)?;
                (john_level(p, c, e.center(), e.area(), dirs)?, Some(e.center()))
            }
            SetMap::Symcore(c) => {
                let m = symcore_point(p)?;
                (symcore_level(p, c, m, dirs)?, Some(m))
            }
        };
        Ok(Region {
            polygon,
            center,
            rays: dirs.len(),
            param: self.param(),
            grid_error: PI * p.diam() / dirs.len() as f64,
        })
    }

    /// Images of `dirs` under `t` that make `apply_with_directions` commute
    /// exactly with `t`: normals transform by `M^{-T}`, rays by `M`.
    pub fn map_directions(&self, t: &AffineMap, dirs: &[Vec2]) -> Vec<Vec2> {
        match self {
            SetMap::Floating(_) => {
                let m = t.adjoint_inverse();
                dirs.iter().map(|&u| (m * u).normalized()).collect()
            }
            _ => dirs.iter().map(|&u| t.apply_linear(u).normalized()).collect(),
        }
    }
}

pub fn floating_body(p: &Polygon, delta: f64, m: usize) -> Result<Region> {
    SetMap::Floating(delta).apply(p, m)
}

pub fn illumination_body(p: &Polygon, delta: f64, m: usize) -> Result<Region> {
    SetMap::Illumination(delta).apply(p, m)
}

pub fn santalo_region(p: &Polygon, c: f64, m: usize) -> Result<Region> {
    SetMap::Santalo(c).apply(p, m)
}

pub fn john_region(p: &Polygon, c: f64, m: usize) -> Result<Region> {
    SetMap::John(c).apply(p, m)
}

pub fn symcore_region(p: &Polygon, c: f64, m: usize) -> Result<Region> {
    SetMap::Symcore(c).apply(p, m)
}

/// Area of `{x ∈ P : <u, x> ≥ t}`.
fn cap_area(p: &Polygon, u: Vec2, t: f64) -> f64 {
    let h = Halfplane::new(-u, -t).expect("unit direction");
    clip_halfplane(p, &h).map_or(0.0, |q| q.area())
}

fn floating(p: &Polygon, delta: f64, normals: &[Vec2]) -> Result<Polygon> {
    if delta == 0.0 {
        return Ok(p.clone());
    }
    let target = delta * p.area();
    let mut body = p.clone();
    for &n in normals {
        let u = n.normalized();
        let (mut lo, mut hi) = (-p.support(-u), p.support(u));
        let tol = 1e-12 * (hi - lo);
        // cap area decreases in the offset
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if cap_area(p, u, mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let offset = 0.5 * (lo + hi);
        let keep = Halfplane::new(u, offset).expect("unit direction");
        body = clip_halfplane(&body, &keep).ok_or(Error::EmptyResult)?;
    }
    Ok(body)
}

/// The crossing of an increasing `f` on `[lo, hi]` with `f(lo) < 0 ≤ f(hi)`,
/// by the Illinois variant of regula falsi. `f` may be `+∞` near `hi`; such
/// steps fall back to bisection.
fn crossing<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    let mut side = 0i8;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mut x = if f_hi.is_finite() && f_lo.is_finite() && f_hi > f_lo {
            (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        } else {
            0.5 * (lo + hi)
        };
        // keep a minimum step inside the bracket
        let guard = 0.01 * (hi - lo);
        x = x.clamp(lo + guard.min(tol), hi - guard.min(tol));
        let fx = f(x);
        if fx < 0.0 {
            lo = x;
            f_lo = fx;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = x;
            f_hi = fx;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (lo + hi)
}

/// Boundary points along the rays `center + t·dir` where the increasing
/// function `f(x)` (negative at `center`) crosses zero, searched on
/// `(0, reach(dir)]`.
fn ray_crossings<F, R>(center: Vec2, dirs: &[Vec2], mut reach: R, mut f: F, tol: f64) -> Vec<Vec2>
where
    F: FnMut(Vec2) -> f64,
    R: FnMut(Vec2) -> f64,
{
    dirs.iter()
        .map(|&d| {
            let d = d.normalized();
            let hi = reach(d);
            let t = crossing(|t| f(center + d * t), 0.0, hi, tol);
            center + d * t
        })
        .collect()
}

fn illumination(p: &Polygon, delta: f64, g: Vec2, dirs: &[Vec2]) -> Result<Polygon> {
    if delta == 0.0 {
        return Ok(p.clone());
    }
    let area = p.area();
    let target = (1.0 + delta) * area;
    let hull_area = |x: Vec2| {
        let mut pts = p.vertices().to_vec();
        pts.push(x);
        canonicalize(&pts).map_or(area, |q| q.area())
    };
    let tol = 1e-12 * p.diam();
    let mut pts: Vec<Vec2> = p.vertices().to_vec();
    for &d in dirs {
        let d = d.normalized();
        let exit = p.ray_exit(g, d);
        // F grows without bound along the ray; double until it passes the level
        let mut hi = 2.0 * exit;
        while hull_area(g + d * hi) < target {
            hi *= 2.0;
        }
        let t = crossing(|t| hull_area(g + d * t) - target, exit, hi, tol);
        pts.push(g + d * t);
    }
    // hull with K itself keeps K inside the approximation
    canonicalize(&pts)
}

fn santalo_level(p: &Polygon, c: f64, s: Vec2, dirs: &[Vec2]) -> Result<Polygon> {
    let base = polar_about(p, s)?.area();
    let target = (1.0 + c) * base;
    let tol = 1e-12 * p.diam();
    let pts = ray_crossings(
        s,
        dirs,
        |d| p.ray_exit(s, d),
        |x| polar_about(p, x).map_or(f64::INFINITY, |q| q.area() / target - 1.0),
        tol,
    );
    canonicalize(&pts)
}

fn john_level(p: &Polygon, c: f64, j: Vec2, top: f64, dirs: &[Vec2]) -> Result<Polygon> {
    let target = c * top;
    let tol = 1e-10 * p.diam();
    let pts = ray_crossings(
        j,
        dirs,
        |d| p.ray_exit(j, d),
        |x| (target - max_centered_area(p, x)) / top,
        tol,
    );
    canonicalize(&pts)
}

fn symcore_level(p: &Polygon, c: f64, m: Vec2, dirs: &[Vec2]) -> Result<Polygon> {
    let top = symmetric_core_area(p, m);
    let target = c * top;
    let tol = 1e-12 * p.diam();
    let pts = ray_crossings(
        m,
        dirs,
        |d| p.ray_exit(m, d),
        |x| (target - symmetric_core_area(p, x)) / top,
        tol,
    );
    canonicalize(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff, unit_square};
    use crate::math::vec2;
    use crate::random::{random_affine, random_body, rng};

    fn inside(outer: &Polygon, inner: &Polygon, tol: f64) -> bool {
        inner.vertices().iter().all(|&v| outer.contains(v, tol))
    }

    #[test]
    fn floating_square_offsets() {
        let sq = unit_square();
        let f = floating_body(&sq, 0.125, 64).unwrap();
        // the axis normal cuts at offset 1 − 2δ
        assert!((f.polygon.support(vec2(1.0, 0.0)) - 0.75).abs() < 1e-10);
        assert!(f.polygon.contains(Vec2::ZERO, 0.0));
        assert!(inside(&sq, &f.polygon, 1e-12));
        assert_eq!(floating_body(&sq, 0.0, 64).unwrap().polygon, sq);
        assert!(floating_body(&sq, 0.5, 64).is_err());
        assert!(floating_body(&sq, 0.1, 10).is_err());
    }

    #[test]
    fn illumination_square_apex() {
        let sq = unit_square();
        let delta = 0.05;
        let r = illumination_body(&sq, delta, 64).unwrap();
        assert!((r.polygon.support(vec2(1.0, 0.0)) - (1.0 + 4.0 * delta)).abs() < 1e-10);
        assert!(inside(&r.polygon, &sq, 1e-12));
        assert_eq!(illumination_body(&sq, 0.0, 64).unwrap().polygon, sq);
    }

    #[test]
    fn santalo_region_shrinks() {
        let sq = unit_square();
        let r = santalo_region(&sq, 1e-4, 64).unwrap();
        assert!(r.polygon.diam() < 0.1 * sq.diam());
        assert!(r.polygon.contains(Vec2::ZERO, 0.0));
    }

    #[test]
    fn john_region_of_square_is_symmetric() {
        let sq = unit_square();
        let r = john_region(&sq, 0.5, 64).unwrap();
        let refl = r.polygon.reflect(Vec2::ZERO);
        assert!(hausdorff(&r.polygon, &refl) < 1e-8);
        let tight = john_region(&sq, 0.999, 64).unwrap();
        assert!(tight.polygon.diam() < 0.1 * sq.diam());
    }

    #[test]
    fn sandwich_and_monotone() {
        let mut r = rng(17);
        for _ in 0..5 {
            let k = random_body(&mut r);
            let small = floating_body(&k, 0.05, 64).unwrap().polygon;
            let smaller = floating_body(&k, 0.1, 64).unwrap().polygon;
            let big = illumination_body(&k, 0.05, 64).unwrap().polygon;
            let bigger = illumination_body(&k, 0.1, 64).unwrap().polygon;
            let tol = 1e-9 * k.diam();
            assert!(inside(&k, &small, tol) && inside(&big, &k, tol));
            assert!(inside(&small, &smaller, tol) && inside(&bigger, &big, tol));
            let m1 = symcore_region(&k, 0.5, 64).unwrap().polygon;
            let m2 = symcore_region(&k, 0.8, 64).unwrap().polygon;
            assert!(inside(&m1, &m2, tol));
        }
    }

    #[test]
    fn matched_directions_commute_with_affine_maps() {
        let mut r = rng(23);
        let k = random_body(&mut r);
        let t = random_affine(&mut r, 10.0);
        let tk = t.apply_polygon(&k);
        let dirs = uniform_directions(64);
        for map in [SetMap::Floating(0.1), SetMap::Illumination(0.1), SetMap::Santalo(0.2), SetMap::Symcore(0.6)] {
            let a = map.apply_with_directions(&k, &dirs).unwrap();
            let b = map.apply_with_directions(&tk, &map.map_directions(&t, &dirs)).unwrap();
            let d = hausdorff(&t.apply_polygon(&a.polygon), &b.polygon);
            assert!(d < 1e-7 * tk.diam(), "{}: {d}", map.name());
        }
    }
}
