use super::PointResult;
use crate::error::{Error, Result};
use crate::geometry::{polar_about, Polygon};
use crate::math::{ln, Vec2};
use crate::optim::jacobian;

const MAX_ITER: usize = 200;
const GRAD_TOL: f64 = 1e-10;

/// Gradient of `x ↦ log area((P − x)°)`, which equals `3·g((P − x)°)` in the plane.
pub fn santalo_gradient(p: &Polygon, x: Vec2) -> Result<Vec2> {
    Ok(polar_about(p, x)?.centroid() * 3.0)
}

fn log_polar_area(p: &Polygon, x: Vec2) -> f64 {
    match polar_about(p, x) {
        Ok(q) => ln(q.area()),
        Err(_) => f64::INFINITY,
    }
}

/// The Santaló point: the unique minimizer of `area((P − x)°)`.
pub fn santalo_point(p: &Polygon) -> Result<Vec2> {
    Ok(santalo_solve(p)?.value)
}

/// Damped Newton on the polar centroid `g((P − x)°)`, started at `g(P)`.
/// The Hessian is a central difference of the exact gradient; iterations
/// that do not descend fall back to a backtracked gradient step.
pub fn santalo_solve(p: &Polygon) -> Result<PointResult> {
    let diam = p.diam();
    let mut x = p.centroid();
    let mut last_res = f64::INFINITY;
    for it in 0..MAX_ITER {
        let polar = polar_about(p, x)?;
        let g = polar.centroid();
        let res = g.norm() / polar.diam();
        last_res = res;
        if res < GRAD_TOL {
            return Ok(PointResult {
                value: x,
                iterations: it,
                residual: res,
            });
        }

        let room = p.boundary_distance(x);
        let h = 1e-5 * room;
        let mut grad = |y: Vec2| polar_about(p, y).ok().map(|q| q.centroid());
        let newton = jacobian(&mut grad, x, h)
            .map(|j| j.symmetrize())
            .filter(|j| j.det() > 0.0 && j.trace() > 0.0)
            .and_then(|j| j.inverse())
            .map(|inv| -(inv * g));

        let step = match newton {
            Some(dx) if dx.dot(g) < 0.0 => dx,
            _ => -g * (room / (g.norm() * 4.0)),
        };

        // close to the minimizer the full step is trusted; the objective
        // is flat to rounding there and cannot arbitrate
        if step.norm() < 1e-6 * diam && newton.is_some() {
            x += step;
            continue;
        }

        let f0 = log_polar_area(p, x);
        let slope = 3.0 * g.dot(step);
        let mut t = 1.0f64;
        let mut moved = false;
        while t > 1e-12 {
            let y = x + step * t;
            let f = log_polar_area(p, y);
            if f.is_finite() && f <= f0 + 1e-4 * t * slope {
                x = y;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            break;
        }
    }
    Err(Error::ConvergenceFailure {
        solver: "santalo",
        iterations: MAX_ITER,
        residual: last_res,
    })
}
