//! Small two-variable search routines shared by the point evaluators.

use crate::math::{vec2, Mat2, Vec2};

/// Result of a two-variable search.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Search {
    pub x: Vec2,
    pub iterations: usize,
}

/// Nelder–Mead minimization of `f` from `x0` with initial simplex size
/// `step`. Stops when the simplex diameter drops below `xtol`. `f` may
/// return `+∞` to mark infeasible points.
pub(crate) fn nelder_mead<F: FnMut(Vec2) -> f64>(
    mut f: F,
    x0: Vec2,
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> Search {
    let mut pts = [x0, x0 + vec2(step, 0.0), x0 + vec2(0.0, step)];
    let mut vals = [f(pts[0]), f(pts[1]), f(pts[2])];
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        // order best .. worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];

        let size = pts[0].dist(pts[1]).max(pts[0].dist(pts[2]));
        if size < xtol {
            break;
        }

        let centroid = (pts[0] + pts[1]) * 0.5;
        let xr = centroid + (centroid - pts[2]);
        let fr = f(xr);
        if fr < vals[0] {
            let xe = centroid + (centroid - pts[2]) * 2.0;
            let fe = f(xe);
            if fe < fr {
                pts[2] = xe;
                vals[2] = fe;
            } else {
                pts[2] = xr;
                vals[2] = fr;
            }
            continue;
        }
        if fr < vals[1] {
            pts[2] = xr;
            vals[2] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[2] {
            let xc = centroid + (xr - centroid) * 0.5;
            (xc, f(xc))
        } else {
            let xc = centroid + (pts[2] - centroid) * 0.5;
            (xc, f(xc))
        };
        if fc < vals[2].min(fr) {
            pts[2] = xc;
            vals[2] = fc;
            continue;
        }
        // shrink toward the best vertex
        for k in 1..3 {
            pts[k] = pts[0] + (pts[k] - pts[0]) * 0.5;
            vals[k] = f(pts[k]);
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap_or(0);
    Search {
        x: pts[best],
        iterations,
    }
}

/// Jacobian of `g` at `x` by central differences with step `h`.
pub(crate) fn jacobian<G: FnMut(Vec2) -> Option<Vec2>>(g: &mut G, x: Vec2, h: f64) -> Option<Mat2> {
    let dx = (g(x + vec2(h, 0.0))? - g(x - vec2(h, 0.0))?) / (2.0 * h);
    let dy = (g(x + vec2(0.0, h))? - g(x - vec2(0.0, h))?) / (2.0 * h);
    Some(Mat2::new(dx.x, dy.x, dx.y, dy.y))
}
