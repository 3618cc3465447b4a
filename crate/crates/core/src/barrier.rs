//! Path-following log-barrier Newton for tiny log-det programs.
//!
//! Every ellipse problem in this crate has the form
//!
//! ```text
//! minimize  −log det [[x0, x1], [x1, x2]]
//! s.t.      |y_i(x)| ≤ s_i(x)     (second-order cones, y_i and s_i affine)
//! ```
//!
//! with at most five unknowns. Each cone gets the barrier `−log(s² − |y|²)`
//! (degree 2). Centering uses the damped Newton step `1/(1+λ)`, which keeps
//! iterates feasible for self-concordant functions; the path parameter grows
//! until the duality gap `2m/t` is below the requested tolerance.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ln, sqrt};

/// Affine data of one cone constraint `|y0 + Jy·x| ≤ s0 + <ds, x>`.
#[derive(Clone, Debug)]
pub(crate) struct Cone<const N: usize> {
    pub s0: f64,
    pub ds: [f64; N],
    pub y0: [f64; 2],
    pub jy: [[f64; N]; 2],
}

pub(crate) struct LogDetProgram<const N: usize> {
    pub cones: Vec<Cone<N>>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Solution<const N: usize> {
    pub x: [f64; N],
    pub iterations: usize,
    pub gap: f64,
}

struct Local<const N: usize> {
    value: f64,
    grad: [f64; N],
    hess: [[f64; N]; N],
}

impl<const N: usize> Local<N> {
    fn zero() -> Self {
        Local {
            value: 0.0,
            grad: [0.0; N],
            hess: [[0.0; N]; N],
        }
    }
}

impl<const N: usize> LogDetProgram<N> {
    /// `−log det` of the symmetric matrix stored in `x[0..3]`.
    fn objective(x: &[f64; N], out: &mut Local<N>, t: f64) -> bool {
        let (p, q, r) = (x[0], x[1], x[2]);
        let det = p * r - q * q;
        if !(p > 0.0 && det > 0.0) {
            return false;
        }
        out.value += -t * ln(det);
        let dd = [r, -2.0 * q, p];
        for i in 0..3 {
            out.grad[i] += -t * dd[i] / det;
            for j in 0..3 {
                out.hess[i][j] += t * dd[i] * dd[j] / (det * det);
            }
        }
        // −∇²det / det, with ∇²det = [[0,0,1],[0,−2,0],[1,0,0]]
        out.hess[0][2] -= t / det;
        out.hess[2][0] -= t / det;
        out.hess[1][1] += 2.0 * t / det;
        true
    }

    fn cone_terms(&self, x: &[f64; N], out: &mut Local<N>) -> bool {
        for c in &self.cones {
            let mut s = c.s0;
            let mut y = c.y0;
            for k in 0..N {
                s += c.ds[k] * x[k];
                y[0] += c.jy[0][k] * x[k];
                y[1] += c.jy[1][k] * x[k];
            }
            let w = s * s - y[0] * y[0] - y[1] * y[1];
            if !(s > 0.0 && w > 0.0) {
                return false;
            }
            out.value -= ln(w);
            let mut gw = [0.0; N];
            for k in 0..N {
                gw[k] = 2.0 * s * c.ds[k] - 2.0 * (c.jy[0][k] * y[0] + c.jy[1][k] * y[1]);
            }
            for i in 0..N {
                out.grad[i] -= gw[i] / w;
                for j in 0..N {
                    let hw = 2.0 * c.ds[i] * c.ds[j]
                        - 2.0 * (c.jy[0][i] * c.jy[0][j] + c.jy[1][i] * c.jy[1][j]);
                    out.hess[i][j] += gw[i] * gw[j] / (w * w) - hw / w;
                }
            }
        }
        true
    }

    fn local(&self, x: &[f64; N], t: f64) -> Option<Local<N>> {
        let mut out = Local::zero();
        if Self::objective(x, &mut out, t) && self.cone_terms(x, &mut out) {
            Some(out)
        } else {
            None
        }
    }

    pub fn is_feasible(&self, x: &[f64; N]) -> bool {
        self.local(x, 1.0).is_some()
    }

    /// Follows the central path from the strictly feasible `x0` until the
    /// duality gap is at most `gap_tol`.
    pub fn solve(&self, x0: [f64; N], gap_tol: f64) -> Result<Solution<N>> {
        if !self.is_feasible(&x0) {
            return Err(Error::BadParams("barrier start point is infeasible"));
        }
        let degree = 2.0 * self.cones.len() as f64;
        let mut x = x0;
        let mut t = 1.0;
        let mut iterations = 0;
        let mut centered: Option<Solution<N>> = None;
        loop {
            let mut trial = x;
            match self.center(&mut trial, t) {
                Ok(steps) => {
                    iterations += steps;
                    x = trial;
                }
                // rounding has taken over; the last centered point stands if it is close
                Err(err) => match centered {
                    Some(sol) if sol.gap <= 1e3 * gap_tol => return Ok(sol),
                    _ => return Err(err),
                },
            }
            let gap = degree / t;
            let sol = Solution { x, iterations, gap };
            if gap <= gap_tol {
                return Ok(sol);
            }
            centered = Some(sol);
            t *= if gap > 1e3 * gap_tol { 16.0 } else { 8.0 };
        }
    }

    fn center(&self, x: &mut [f64; N], t: f64) -> Result<usize> {
        const MAX_STEPS: usize = 200;
        let mut last_lambda = f64::INFINITY;
        for it in 0..MAX_STEPS {
            let loc = self
                .local(x, t)
                .ok_or(Error::BadParams("iterate left the feasible region"))?;
            let neg_grad: [f64; N] = core::array::from_fn(|i| -loc.grad[i]);
            let Some(dx) = solve_dense(loc.hess, neg_grad) else {
                return Err(Error::ConvergenceFailure {
                    solver: "log-det barrier",
                    iterations: it,
                    residual: f64::NAN,
                });
            };
            let lambda2: f64 = (0..N).map(|i| dx[i] * neg_grad[i]).sum();
            let lambda = sqrt(lambda2.max(0.0));
            if lambda < 1e-9 {
                return Ok(it + 1);
            }
            // rounding floor: quadratic convergence has stopped at a small decrement
            if lambda < 1e-3 && lambda >= 0.5 * last_lambda {
                return Ok(it + 1);
            }
            last_lambda = lambda;
            let mut step = if lambda > 0.25 { 1.0 / (1.0 + lambda) } else { 1.0 };
            loop {
                let trial: [f64; N] = core::array::from_fn(|i| x[i] + step * dx[i]);
                if self.is_feasible(&trial) {
                    *x = trial;
                    break;
                }
                step *= 0.5;
                if step < 1e-16 {
                    return Err(Error::ConvergenceFailure {
                        solver: "log-det barrier",
                        iterations: it,
                        residual: lambda,
                    });
                }
            }
        }
        Err(Error::ConvergenceFailure {
            solver: "log-det barrier",
            iterations: MAX_STEPS,
            residual: last_lambda,
        })
    }
}

/// Gaussian elimination with partial pivoting.
pub(crate) fn solve_dense<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let mut piv = col;
        for row in col + 1..N {
            if a[row][col].abs() > a[piv][col].abs() {
                piv = row;
            }
        }
        if a[piv][col] == 0.0 || !a[piv][col].is_finite() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..N {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..N {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = [0.0; N];
    for i in (0..N).rev() {
        let mut acc = b[i];
        for k in i + 1..N {
            acc -= a[i][k] * x[k];
        }
        x[i] = acc / a[i][i];
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}
