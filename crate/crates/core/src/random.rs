//! Seeded random bodies and maps for randomized suites.
//!
//! Every generator draws from a [`SuiteRng`] (ChaCha8), so a suite seed fully
//! determines the sample.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{canonicalize, AffineMap, Polygon};
use crate::math::{exp, ln, sqrt, vec2, Mat2, Vec2, PI};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the unit disk.
pub fn unit_disk_point<R: Rng>(rng: &mut R) -> Vec2 {
    let r = sqrt(rng.gen::<f64>());
    Vec2::from_angle(2.0 * PI * rng.gen::<f64>()) * r
}

/// Convex hull of `k` uniform points in the unit disk.
pub fn random_hull<R: Rng>(rng: &mut R, k: usize) -> Polygon {
    let k = k.max(3);
    loop {
        let pts: Vec<Vec2> = (0..k).map(|_| unit_disk_point(rng)).collect();
        if let Ok(p) = canonicalize(&pts) {
            // thin slivers make every downstream tolerance meaningless
            if p.area() > 0.05 {
                return p;
            }
        }
    }
}

/// Random nonsingular linear map with spectral condition number at most `max_cond`.
pub fn random_linear<R: Rng>(rng: &mut R, max_cond: f64) -> Mat2 {
    let max_cond = max_cond.max(1.0);
    let spread = ln(max_cond);
    let log_s0 = rng.gen_range(-1.0..1.0);
    let s0 = exp(log_s0);
    let s1 = exp(log_s0 - spread * rng.gen::<f64>());
    let flip = if rng.gen::<bool>() { -1.0 } else { 1.0 };
    let r0 = Mat2::rotation(2.0 * PI * rng.gen::<f64>());
    let r1 = Mat2::rotation(2.0 * PI * rng.gen::<f64>());
    r0 * Mat2::diag(s0, flip * s1) * r1
}

/// Random affine map: linear part as in [`random_linear`], translation in `[-2, 2]²`.
pub fn random_affine<R: Rng>(rng: &mut R, max_cond: f64) -> AffineMap {
    let m = random_linear(rng, max_cond);
    let t = vec2(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    AffineMap::new(m, t).expect("singular values are bounded away from zero")
}

/// Random test body: hull of `k ∈ [5, 30]` disk points under a random affine
/// map with condition number at most 10.
pub fn random_body<R: Rng>(rng: &mut R) -> Polygon {
    let k = rng.gen_range(5..=30);
    let hull = random_hull(rng, k);
    random_affine(rng, 10.0).apply_polygon(&hull)
}

/// Uniform point of `p` whose boundary distance is at least `margin` times
/// that of the centroid. Any `margin < 1` is attainable.
pub fn interior_point<R: Rng>(rng: &mut R, p: &Polygon, margin: f64) -> Vec2 {
    let verts = p.vertices();
    let (mut lo, mut hi) = (verts[0], verts[0]);
    for v in verts {
        lo = vec2(lo.x.min(v.x), lo.y.min(v.y));
        hi = vec2(hi.x.max(v.x), hi.y.max(v.y));
    }
    let need = margin.min(0.99) * p.boundary_distance(p.centroid());
    loop {
        let x = vec2(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if p.boundary_distance(x) >= need {
            return x;
        }
    }
}
