use alloc::vec::Vec;

use super::polygon::Polygon;
use crate::math::{atan2, Vec2, PI};

fn normal_angles(p: &Polygon, out: &mut Vec<f64>) {
    for i in 0..p.len() {
        let n = p.edge_normal(i);
        out.push(atan2(n.y, n.x));
    }
}

/// Hausdorff distance `sup_{|u|=1} |h_P(u) − h_Q(u)|`.
///
/// Between consecutive normals of the merged fans both support points are
/// fixed vertices `v`, `w`, so the difference is `<v − w, u>` and its
/// extremum on the arc sits at an endpoint or at `±(v − w)`.
pub fn hausdorff(p: &Polygon, q: &Polygon) -> f64 {
    let mut angles = Vec::with_capacity(p.len() + q.len());
    normal_angles(p, &mut angles);
    normal_angles(q, &mut angles);
    angles.sort_by(f64::total_cmp);
    angles.dedup();

    let gap = |u: Vec2| (p.support(u) - q.support(u)).abs();
    let mut best: f64 = 0.0;
    let k = angles.len();
    for i in 0..k {
        let start = angles[i];
        let mut end = angles[(i + 1) % k];
        if end <= start {
            end += 2.0 * PI;
        }
        best = best.max(gap(Vec2::from_angle(start)));

        let mid = Vec2::from_angle(0.5 * (start + end));
        let diff = p.support_point(mid) - q.support_point(mid);
        if diff.norm_sq() == 0.0 {
            continue;
        }
        for d in [diff, -diff] {
            let mut theta = atan2(d.y, d.x);
            while theta < start {
                theta += 2.0 * PI;
            }
            if theta < end {
                best = best.max(gap(Vec2::from_angle(theta)));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polygon::{cross_polytope, unit_square};
    use crate::math::{sqrt, vec2};

    #[test]
    fn zero_on_self() {
        assert_eq!(hausdorff(&unit_square(), &unit_square()), 0.0);
    }

    #[test]
    fn translation_distance() {
        let sq = unit_square();
        let d = hausdorff(&sq, &sq.translate(vec2(0.3, 0.0)));
        assert!((d - 0.3).abs() < 1e-15);
    }

    #[test]
    fn square_vs_cross() {
        // max over the circle of min(|u1|, |u2|)
        let d = hausdorff(&unit_square(), &cross_polytope());
        assert!((d - 1.0 / sqrt(2.0)).abs() < 1e-15);
    }

    #[test]
    fn interior_critical_direction() {
        // the maximizing direction is not a normal of either body
        let tri = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)]).unwrap();
        let small = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        let brute = (0..200_000)
            .map(|k| {
                let u = Vec2::from_angle(2.0 * PI * k as f64 / 200_000.0);
                (tri.support(u) - small.support(u)).abs()
            })
            .fold(0.0, f64::max);
        let d = hausdorff(&tri, &small);
        assert!(d >= brute - 1e-15);
        assert!(d - brute < 1e-9);
    }
}
