use alloc::vec::Vec;

use super::polygon::{canonical_rotation, canonicalize, Polygon, EPS_GEOM};
use crate::error::{Error, Result};
use crate::math::{vec2, Vec2};

/// The polar `(P − z)°`, expressed in the frame where `z` is the origin.
///
/// Each edge through `v_i, v_{i+1}` becomes the vertex `u` with
/// `<u, v_i − z> = <u, v_{i+1} − z> = 1`. Requires `z` to sit at least
/// `EPS_GEOM·diam(P)` inside every edge.
pub fn polar_about(p: &Polygon, z: Vec2) -> Result<Polygon> {
    let n = p.len();
    let margin_needed = EPS_GEOM * p.diam().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut min_margin = f64::INFINITY;
    for i in 0..n {
        let a = p.vertex(i) - z;
        let b = p.vertex(i + 1) - z;
        let e = b - a;
        let normal = vec2(e.y, -e.x);
        let len = normal.norm();
        let dist = normal.dot(a) / len;
        min_margin = min_margin.min(dist);
        out.push(normal / (len * dist));
    }
    if !(min_margin > margin_needed) {
        return Err(Error::PointNotInterior { margin: min_margin });
    }
    // dual vertices of consecutive CCW edges are themselves CCW
    Ok(canonical_rotation(out))
}

/// The polar body `K^z = (K − z)° + z`.
pub fn polar_body(p: &Polygon, z: Vec2) -> Result<Polygon> {
    Ok(polar_about(p, z)?.translate(z))
}

/// The projective shift `K_z = {x / (1 − <x, z>) : x ∈ K}`, defined when the
/// origin is interior to `K` and `<x, z> < 1` on `K`. Equals `(K° − z)°`.
pub fn k_sub_z(p: &Polygon, z: Vec2) -> Result<Polygon> {
    let margin_needed = EPS_GEOM * p.diam();
    if !(p.boundary_distance(Vec2::ZERO) > margin_needed) {
        return Err(Error::PointNotInterior {
            margin: p.boundary_distance(Vec2::ZERO),
        });
    }
    let h = p.support(z);
    if !(h < 1.0 - EPS_GEOM) {
        return Err(Error::ShiftOutOfRange { support: h });
    }
    let pts: Vec<Vec2> = p
        .vertices()
        .iter()
        .map(|&x| x / (1.0 - x.dot(z)))
        .collect();
    canonicalize(&pts)
}
