use alloc::vec;
use alloc::vec::Vec;

use crate::barrier::solve_dense;

/// Lawson–Hanson non-negative least squares for a 5-row system:
/// minimize `|A c − b|` subject to `c ≥ 0`, with `A` given column-wise.
pub(crate) fn nnls5(cols: &[[f64; 5]], b: [f64; 5]) -> Vec<f64> {
    let m = cols.len();
    let mut c = vec![0.0; m];
    let mut passive = vec![false; m];
    // columns dependent on the current passive set
    let mut blocked = vec![false; m];
    let tol = 1e-13;

    let residual = |c: &[f64]| -> [f64; 5] {
        let mut r = b;
        for (j, col) in cols.iter().enumerate() {
            if c[j] != 0.0 {
                for i in 0..5 {
                    r[i] -= col[i] * c[j];
                }
            }
        }
        r
    };

    for _outer in 0..(3 * m + 10) {
        let r = residual(&c);
        let mut best = None;
        let mut best_w = tol;
        for j in 0..m {
            if passive[j] || blocked[j] {
                continue;
            }
            let w: f64 = (0..5).map(|i| cols[j][i] * r[i]).sum();
            if w > best_w {
                best_w = w;
                best = Some(j);
            }
        }
        let Some(enter) = best else { break };
        passive[enter] = true;

        for _inner in 0..(3 * m + 10) {
            let idx: Vec<usize> = (0..m).filter(|&j| passive[j]).collect();
            let Some(z) = least_squares(cols, &idx, b) else {
                passive[enter] = false;
                blocked[enter] = true;
                break;
            };
            if z.iter().all(|&v| v > 0.0) {
                for (k, &j) in idx.iter().enumerate() {
                    c[j] = z[k];
                }
                break;
            }
            // step toward z until the first passive weight hits zero
            let mut alpha = 1.0f64;
            for (k, &j) in idx.iter().enumerate() {
                if z[k] <= 0.0 {
                    let denom = c[j] - z[k];
                    if denom > 0.0 {
                        alpha = alpha.min(c[j] / denom);
                    }
                }
            }
            for (k, &j) in idx.iter().enumerate() {
                c[j] += alpha * (z[k] - c[j]);
                if c[j] <= tol {
                    c[j] = 0.0;
                    passive[j] = false;
                }
            }
        }
    }
    c
}

/// Least squares on the selected columns via normal equations (≤ 5 columns).
fn least_squares(cols: &[[f64; 5]], idx: &[usize], b: [f64; 5]) -> Option<Vec<f64>> {
    let k = idx.len();
    if k == 0 || k > 5 {
        return None;
    }
    let mut g = [[0.0; 5]; 5];
    let mut rhs = [0.0; 5];
    for (p, &jp) in idx.iter().enumerate() {
        for (q, &jq) in idx.iter().enumerate() {
            g[p][q] = (0..5).map(|i| cols[jp][i] * cols[jq][i]).sum();
        }
        rhs[p] = (0..5).map(|i| cols[jp][i] * b[i]).sum();
    }
    // pad unused rows with identity so the fixed-size solve stays regular
    for p in k..5 {
        g[p][p] = 1.0;
    }
    let sol = solve_dense(g, rhs)?;
    Some(sol[..k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_nonnegative_solution() {
        let cols = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
        ];
        let c = nnls5(&cols, [2.0, 3.0, 1.0, 0.0, 0.0]);
        let mut r = [2.0, 3.0, 1.0, 0.0, 0.0];
        for (j, col) in cols.iter().enumerate() {
            assert!(c[j] >= 0.0);
            for i in 0..5 {
                r[i] -= col[i] * c[j];
            }
        }
        assert!(r.iter().map(|v| v * v).sum::<f64>() < 1e-24);
    }

    #[test]
    fn clamps_negative_directions() {
        let cols = [[1.0, 0.0, 0.0, 0.0, 0.0]];
        let c = nnls5(&cols, [-1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(c, vec![0.0]);
    }
}
