use super::PointResult;
use crate::error::{Error, Result};
use crate::geometry::{intersect, Polygon};
use crate::math::{vec2, Vec2};
use crate::optim::{jacobian, nelder_mead};

/// `area(P ∩ (2x − P))`, zero when `x` is not interior.
pub fn symmetric_core_area(p: &Polygon, x: Vec2) -> f64 {
    if !(p.boundary_distance(x) > 0.0) {
        return 0.0;
    }
    intersect(p, &p.reflect(x)).map_or(0.0, |q| q.area())
}

/// Gradient of [`symmetric_core_area`] in `x`.
///
/// Moving `x` translates the reflected body by twice the displacement, so
/// only the intersection edges contributed by `2x − P` move; the gradient is
/// twice the sum of their outward length-weighted normals.
pub fn symcore_gradient(p: &Polygon, x: Vec2) -> Option<Vec2> {
    if !(p.boundary_distance(x) > 0.0) {
        return None;
    }
    let q = intersect(p, &p.reflect(x))?;
    let tol = 1e-12 * p.diam();
    let mut grad = Vec2::ZERO;
    for (a, b) in q.edges() {
        let mid = (a + b) * 0.5;
        if p.boundary_distance(mid) > tol {
            let e = b - a;
            grad += vec2(e.y, -e.x) * 2.0;
        }
    }
    Some(grad)
}

pub fn symcore_point(p: &Polygon) -> Result<Vec2> {
    Ok(symcore_solve(p)?.value)
}

/// Maximizes the symmetric-core area: Nelder–Mead from `g(P)`, then a
/// Newton polish on the exact gradient.
pub fn symcore_solve(p: &Polygon) -> Result<PointResult> {
    let diam = p.diam();
    let area = p.area();
    let nm = nelder_mead(
        |x| {
            let a = symmetric_core_area(p, x);
            if a > 0.0 {
                -a / area
            } else {
                f64::INFINITY
            }
        },
        p.centroid(),
        0.05 * diam,
        1e-10 * diam,
        2000,
    );
    let mut x = nm.x;
    let mut iterations = nm.iterations;
    let grad_norm = |y: Vec2| symcore_gradient(p, y).map_or(f64::INFINITY, |g| g.norm());
    let mut res = grad_norm(x);
    for _ in 0..50 {
        if res < 1e-14 * diam {
            break;
        }
        let Some(g) = symcore_gradient(p, x) else { break };
        let h = 1e-7 * diam;
        let mut gradf = |y: Vec2| symcore_gradient(p, y);
        let Some(dx) = jacobian(&mut gradf, x, h)
            .and_then(|j| j.inverse())
            .map(|inv| -(inv * g))
        else {
            break;
        };
        if dx.norm() > 1e-3 * diam {
            break;
        }
        let mut t = 1.0;
        let mut moved = false;
        while t > 1e-4 {
            let y = x + dx * t;
            let r = grad_norm(y);
            if r < res {
                x = y;
                res = r;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        iterations += 1;
        if !moved {
            break;
        }
    }
    if !(p.boundary_distance(x) > 0.0) {
        return Err(Error::ConvergenceFailure {
            solver: "symcore",
            iterations,
            residual: res,
        });
    }
    Ok(PointResult {
        value: x,
        iterations,
        residual: res / diam,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{standard_simplex, unit_square, AffineMap};
    use crate::math::Mat2;
    use crate::random::{random_affine, random_body, rng};

    #[test]
    fn symmetric_body_center_keeps_full_area() {
        let p = AffineMap::new(Mat2::new(2.0, 1.0, 0.0, 1.0), vec2(1.0, 2.0))
            .unwrap()
            .apply_polygon(&unit_square());
        let m = symcore_point(&p).unwrap();
        assert!(m.dist(vec2(1.0, 2.0)) < 1e-9);
        assert!((symmetric_core_area(&p, m) - p.area()).abs() < 1e-9);
    }

    #[test]
    fn triangle_gives_centroid_and_two_thirds() {
        let t = standard_simplex();
        let m = symcore_point(&t).unwrap();
        assert!(m.dist(vec2(1.0 / 3.0, 1.0 / 3.0)) < 1e-9);
        assert!((symmetric_core_area(&t, m) - t.area() * 2.0 / 3.0).abs() < 1e-12);
        // grid oracle
        let n = 300;
        let mut best = 0.0f64;
        for i in 1..n {
            for j in 1..n - i {
                let x = vec2(i as f64 / n as f64, j as f64 / n as f64);
                best = best.max(symmetric_core_area(&t, x));
            }
        }
        assert!(best <= symmetric_core_area(&t, m) + 1e-15);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut r = rng(2);
        for _ in 0..10 {
            let p = random_body(&mut r);
            let x = p.centroid() + vec2(0.01, -0.02) * p.diam();
            let g = symcore_gradient(&p, x).unwrap();
            let h = 1e-6 * p.diam();
            let fx = (symmetric_core_area(&p, x + vec2(h, 0.0)) - symmetric_core_area(&p, x - vec2(h, 0.0))) / (2.0 * h);
            let fy = (symmetric_core_area(&p, x + vec2(0.0, h)) - symmetric_core_area(&p, x - vec2(0.0, h))) / (2.0 * h);
            assert!(vec2(fx, fy).dist(g) < 1e-6 * p.diam(), "{g:?} vs {fx} {fy}");
        }
    }

    #[test]
    fn stationary_and_equivariant_on_random_bodies() {
        let mut r = rng(9);
        for _ in 0..30 {
            let p = random_body(&mut r);
            let t = random_affine(&mut r, 10.0);
            let m = symcore_point(&p).unwrap();
            let h = 1e-6 * p.diam();
            let fx = (symmetric_core_area(&p, m + vec2(h, 0.0)) - symmetric_core_area(&p, m - vec2(h, 0.0))) / (2.0 * h);
            let fy = (symmetric_core_area(&p, m + vec2(0.0, h)) - symmetric_core_area(&p, m - vec2(0.0, h))) / (2.0 * h);
            assert!(vec2(fx, fy).norm() < 1e-8 * p.diam());
            let tp = t.apply_polygon(&p);
            let mt = symcore_point(&tp).unwrap();
            assert!(mt.dist(t.apply(m)) < 1e-7 * tp.diam());
        }
    }
}
