use crate::geometry::{clip_halfplane, intersect, polar_about, Halfplane, Polygon, EPS_GEOM};
use crate::math::Vec2;

/// The two opposite caps of `P` in the direction `G = g((P − g(P))°)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Caps {
    /// `{x ∈ P : <x, G> ≥ h_P(G) − ε}`
    pub a: Polygon,
    /// `{x ∈ P : <x, G> ≤ −h_P(−G) + δ}`
    pub b: Polygon,
    pub direction: Vec2,
}

/// Cap construction. When `G` vanishes (to `EPS_GEOM` relative to the polar's
/// diameter) both caps are the whole body.
pub fn caps(p: &Polygon, eps: f64, delta: f64) -> Caps {
    let g = p.centroid();
    // the centroid is interior for every valid polygon
    let polar = polar_about(p, g).expect("centroid is interior");
    let dir = polar.centroid();
    if dir.norm() <= EPS_GEOM * polar.diam() {
        return Caps {
            a: p.clone(),
            b: p.clone(),
            direction: dir,
        };
    }
    let cut = |normal: Vec2, offset: f64| {
        let h = Halfplane::new(normal, offset).expect("direction is nonzero");
        // a positive width keeps a nonempty slice next to the supporting line
        clip_halfplane(p, &h).unwrap_or_else(|| p.clone())
    };
    let a = cut(-dir, eps - p.support(dir));
    let b = cut(dir, delta - p.support(-dir));
    Caps {
        a,
        b,
        direction: dir,
    }
}

/// Centroid of `A ∪ B`, by inclusion–exclusion when the caps overlap.
pub fn union_centroid(a: &Polygon, b: &Polygon) -> Vec2 {
    let (aa, ga) = a.area_centroid();
    let (ab, gb) = b.area_centroid();
    let (ao, go) = intersect(a, b).map_or((0.0, Vec2::ZERO), |o| o.area_centroid());
    (ga * aa + gb * ab - go * ao) / (aa + ab - ao)
}

/// `p_{ε,δ}(P) = g(A ∪ B)`.
pub fn cap_point(p: &Polygon, eps: f64, delta: f64) -> Vec2 {
    let c = caps(p, eps, delta);
    union_centroid(&c.a, &c.b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{clip_halfplane, unit_square};
    use crate::random::{random_hull, rng};

    #[test]
    fn symmetric_body_uses_whole_body() {
        let c = caps(&unit_square(), 0.1, 0.2);
        assert_eq!(c.a, unit_square());
        assert_eq!(c.b, unit_square());
        assert!(cap_point(&unit_square(), 0.3, 0.01).norm() < 1e-15);
    }

    #[test]
    fn triangle_caps_degenerate_to_centroid() {
        // every triangle is affinely regular, so the polar centroid vanishes
        let mut r = rng(4);
        for _ in 0..10 {
            let t = random_hull(&mut r, 3);
            if t.len() != 3 {
                continue;
            }
            assert!(cap_point(&t, 0.1, 0.1).dist(t.centroid()) < 1e-12 * t.diam());
        }
    }

    #[test]
    fn union_centroid_against_split_oracle() {
        // oracle: the union is the disjoint union of B and A \ B
        let mut r = rng(4);
        for _ in 0..20 {
            let p = random_hull(&mut r, 8);
            let c0 = caps(&p, 1.0, 1.0);
            let d = c0.direction;
            let width = p.support(d) + p.support(-d);
            for (fe, fd) in [(0.1, 0.1), (0.7, 0.6), (0.02, 0.3)] {
                let (eps, delta) = (fe * width, fd * width);
                let c = caps(&p, eps, delta);
                let got = cap_point(&p, eps, delta);

                let hb = Halfplane::new(-d, p.support(-d) - delta).unwrap();
                let a_minus_b = clip_halfplane(&c.a, &hb);
                let (ab, gb) = c.b.area_centroid();
                let (am, gm) = a_minus_b.map_or((0.0, Vec2::ZERO), |q| q.area_centroid());
                let want = (gb * ab + gm * am) / (ab + am);
                assert!(got.dist(want) < 1e-12, "{got:?} vs {want:?}");
                assert!(p.boundary_distance(got) > 0.0);
            }
        }
    }

    #[test]
    fn disjoint_caps_weighted_form() {
        let p = Polygon::from_xy(&[(-2.0 / 3.0, -2.0 / 3.0), (2.0, -2.0), (2.0, 2.0), (-2.0 / 3.0, 2.0 / 3.0)]).unwrap();
        let c = caps(&p, 1e-3, 1e-3);
        assert!(intersect(&c.a, &c.b).is_none());
        let (aa, ga) = c.a.area_centroid();
        let (ab, gb) = c.b.area_centroid();
        let want = (ga * aa + gb * ab) / (aa + ab);
        assert!(cap_point(&p, 1e-3, 1e-3).dist(want) < 1e-14);
    }
}
