//! A proper affine invariant point that is not injective.
//!
//! For `B_η = (B∞²)_{ηe₁}` the cap point `p_{ε,δ}` is tuned (through `δ`) so
//! that `p_{ε,δ}(B_η) = 0`. Since `p_{ε,δ}(B∞²) = 0` as well, both `z = 0` and
//! `z = ηe₁` solve `p_{ε,δ}((B₁² − z)°) = 0`.

use crate::duality::{polar_preimage, preimage_residual};
use crate::error::{Error, Result};
use crate::geometry::{cross_polytope, intersect, unit_square, Polygon};
use crate::math::{vec2, Vec2};
use crate::points::{caps, union_centroid, PointFunction};

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::BadParams("eta must lie in (0, 1)"));
    }
    Ok(())
}

/// The trapezoid `K(a, b)` with vertices `(−(2b/3 + a/3)/(a+b), ±a)` and
/// `((2a/3 + b/3)/(a+b), ±b)`; its centroid is the origin.
pub fn body_kab(a: f64, b: f64) -> Result<Polygon> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::BadParams("K(a, b) needs 0 < a < b"));
    }
    let left = -(2.0 * b / 3.0 + a / 3.0) / (a + b);
    let right = (2.0 * a / 3.0 + b / 3.0) / (a + b);
    Polygon::from_xy(&[(left, -a), (right, -b), (right, b), (left, a)])
}

/// First coordinate of `g(K(a, b)°)` in closed form.
pub fn kab_polar_centroid(a: f64, b: f64) -> f64 {
    let (a2, b2) = (a * a, b * b);
    -3.0 * a * b * (b2 - a2) / ((2.0 * a2 + 2.0 * b2 + 5.0 * a * b) * (2.0 * a2 + 2.0 * b2 + 2.0 * a * b))
}

/// `B_η = conv{(−1/(1+η), ±1/(1+η)), (1/(1−η), ±1/(1−η))}`.
pub fn b_eta(eta: f64) -> Result<Polygon> {
    check_eta(eta)?;
    let a = 1.0 / (1.0 + eta);
    let b = 1.0 / (1.0 - eta);
    Polygon::from_xy(&[(-a, -a), (b, -b), (b, b), (-a, a)])
}

/// `α(η) = −3η(1−η²)² / ((3+η²)(9−η²))`, the first coordinate of
/// `g((B_η − g(B_η))°)`.
pub fn alpha(eta: f64) -> Result<f64> {
    check_eta(eta)?;
    let e2 = eta * eta;
    let w = 1.0 - e2;
    Ok(-3.0 * eta * w * w / ((3.0 + e2) * (9.0 - e2)))
}

/// `α(η)` computed geometrically from the polygon pipeline.
pub fn alpha_geometric(eta: f64) -> Result<f64> {
    Ok(caps(&b_eta(eta)?, 1.0, 1.0).direction.x)
}

/// `|A_{g,ε}(B_η)|` in closed form.
pub fn cap_area_a(eta: f64, eps: f64) -> Result<f64> {
    let u = eps / alpha(eta)?.abs();
    Ok(u * (2.0 / (1.0 + eta) + u * eta))
}

/// `|B_{g,δ}(B_η)|` in closed form.
pub fn cap_area_b(eta: f64, delta: f64) -> Result<f64> {
    let v = delta / alpha(eta)?.abs();
    Ok(v * (2.0 / (1.0 - eta) - v * eta))
}

/// The two-block polynomial `f_ε(δ)` (an ε-block plus a δ-block) traditionally
/// used to balance the caps of `B_η`.
///
/// Kept for comparison only: it does not equal the first moment of `A ∪ B`,
/// and its root leaves `p_{ε,δ}(B_η)` visibly off the origin.
/// [`moment_balance`] is the exact quantity and is what [`solve_delta`] uses.
pub fn f_eps(delta: f64, eta: f64, eps: f64) -> Result<f64> {
    let al = alpha(eta)?.abs();
    if !(eps > 0.0 && delta > 0.0) {
        return Err(Error::BadParams("f_eps needs eps > 0 and delta > 0"));
    }
    let e_block = eps
        * eps
        * (2.0 / (1.0 + eta) + eps * eta / al)
        * (-1.0 / ((1.0 + eta) * (1.0 + eta))
            + eps / (2.0 * al) * ((1.0 - eta) / (1.0 + eta) + 2.0 * eps * eta / (3.0 * al)));
    let d_block = delta
        * delta
        * (2.0 / (1.0 - eta) - delta * eta / al)
        * (1.0 / ((1.0 - eta) * (1.0 - eta))
            - delta / (2.0 * al) * ((1.0 + eta) / (1.0 - eta) - 2.0 * delta * eta / (3.0 * al)));
    Ok(e_block + d_block)
}

/// Exact first moment `∫_A x₁ + ∫_B x₁` of the two caps of `B_η`, where
/// `B_η = {−a ≤ x ≤ b, |y| ≤ 1 + ηx}`, `A` is the slab of width `ε/|α|` at
/// `x = −a` and `B` the slab of width `δ/|α|` at `x = b`.
/// Zero exactly when `p_{ε,δ}(B_η) = 0` (for disjoint caps).
pub fn moment_balance(delta: f64, eta: f64, eps: f64) -> Result<f64> {
    let al = alpha(eta)?.abs();
    let a = 1.0 / (1.0 + eta);
    let b = 1.0 / (1.0 - eta);
    let u = eps / al;
    let v = delta / al;
    // ∫ 2x(1 + ηx) dx = x² + (2η/3)x³, expanded around each end
    let k = 2.0 * eta / 3.0;
    let m_a = u * u - 2.0 * a * u + k * (3.0 * a * a * u - 3.0 * a * u * u + u * u * u);
    let m_b = 2.0 * b * v - v * v + k * (3.0 * b * b * v - 3.0 * b * v * v + v * v * v);
    Ok(m_a + m_b)
}

/// Bound `2|α(η)|/(1 − η²)` on `ε + δ` that keeps the caps disjoint.
pub fn disjointness_bound(eta: f64) -> Result<f64> {
    Ok(2.0 * alpha(eta)?.abs() / (1.0 - eta * eta))
}

/// The default `ε = |α(η)|/10`.
pub fn default_eps(eta: f64) -> Result<f64> {
    Ok(alpha(eta)?.abs() / 10.0)
}

/// The `δ ∈ (ε², ε)` balancing the caps of `B_η`, by bisection of
/// [`moment_balance`] down to adjacent floating-point numbers.
pub fn solve_delta(eta: f64, eps: f64) -> Result<f64> {
    check_eta(eta)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::BadParams("eps must lie in (0, 1)"));
    }
    let (mut lo, mut hi) = (eps * eps, eps);
    let f_lo = moment_balance(lo, eta, eps)?;
    let f_hi = moment_balance(hi, eta, eps)?;
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoRoot { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if moment_balance(mid, eta, eps)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta = if moment_balance(lo, eta, eps)?.abs() <= moment_balance(hi, eta, eps)?.abs() {
        lo
    } else {
        hi
    };
    if !(eps + delta < disjointness_bound(eta)?) {
        return Err(Error::NoRoot { lo: eps * eps, hi: eps });
    }
    Ok(delta)
}

/// A root `z` of `F(z) = p_{ε,δ}((B₁² − z)°)` with its residual `|F(z)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub z: Vec2,
    pub residual: f64,
}

/// Certificate that `p_{ε,δ}` maps two different bodies to the same polar
/// pair, i.e. that `K ↦ K^{p(K)}` is not injective.
#[derive(Clone, Debug, PartialEq)]
pub struct NonInjectivityCertificate {
    pub eta: f64,
    pub eps: f64,
    pub delta: f64,
    pub alpha: f64,
    pub alpha_geometric: f64,
    /// `|p_{ε,δ}(B∞²)|`
    pub residual_sym: f64,
    /// `|p_{ε,δ}(B_η)|`
    pub residual_eta: f64,
    pub disjoint: bool,
    /// Closed-form and geometric cap areas of `B_η`: `(|A|, |A|_geom, |B|, |B|_geom)`.
    pub cap_areas: (f64, f64, f64, f64),
    /// `z₁ = 0` and `z₂ = (η, 0)` on `C = B₁²`.
    pub witnesses: [Witness; 2],
    /// Roots found by the preimage solver from `0` and `0.9·(η, 0)`.
    pub preimage_roots: [Vec2; 2],
    /// [`f_eps`] at `δ` (informational).
    pub f_eps_at_delta: f64,
    pub moment_at_delta: f64,
}

const RESIDUAL_TOL: f64 = 1e-9;
const CROSS_CHECK_TOL: f64 = 1e-10;

/// Computes `δ` and certifies the configuration.
pub fn certify(eta: f64, eps: f64) -> Result<NonInjectivityCertificate> {
    let delta = solve_delta(eta, eps)?;
    certify_with_delta(eta, eps, delta)
}

/// Certifies the configuration for a given `δ`; fails with the offending
/// residual if any check misses.
pub fn certify_with_delta(eta: f64, eps: f64, delta: f64) -> Result<NonInjectivityCertificate> {
    let al = alpha(eta)?;
    let pf = PointFunction::cap_family(eps, delta)?;
    let beta = b_eta(eta)?;

    let sym = unit_square();
    let c_sym = caps(&sym, eps, delta);
    let residual_sym = union_centroid(&c_sym.a, &c_sym.b).norm();

    let c_eta = caps(&beta, eps, delta);
    let residual_eta = union_centroid(&c_eta.a, &c_eta.b).norm();
    let alpha_geometric = c_eta.direction.x;

    let disjoint = eps + delta < disjointness_bound(eta)? && intersect(&c_eta.a, &c_eta.b).is_none();
    let cap_areas = (
        cap_area_a(eta, eps)?,
        c_eta.a.area(),
        cap_area_b(eta, delta)?,
        c_eta.b.area(),
    );

    let c = cross_polytope();
    let z2 = vec2(eta, 0.0);
    let witness = |z: Vec2| -> Result<Witness> {
        let (f, _) = preimage_residual(&pf, &c, z)?;
        Ok(Witness { z, residual: f.norm() })
    };
    let witnesses = [witness(Vec2::ZERO)?, witness(z2)?];
    let preimage_roots = [
        polar_preimage(&pf, &c, Vec2::ZERO)?,
        polar_preimage(&pf, &c, z2 * 0.9)?,
    ];

    let cert = NonInjectivityCertificate {
        eta,
        eps,
        delta,
        alpha: al,
        alpha_geometric,
        residual_sym,
        residual_eta,
        disjoint,
        cap_areas,
        witnesses,
        preimage_roots,
        f_eps_at_delta: f_eps(delta, eta, eps)?,
        moment_at_delta: moment_balance(delta, eta, eps)?,
    };

    let fail = |check: &'static str, residual: f64| Err(Error::CertificationFailure { check, residual });
    if !(delta > eps * eps && delta < eps) {
        return fail("delta in (eps^2, eps)", delta);
    }
    if !cert.disjoint {
        return fail("disjoint caps", eps + delta);
    }
    if !(residual_sym < RESIDUAL_TOL) {
        return fail("p(B_inf) = 0", residual_sym);
    }
    if !(residual_eta < RESIDUAL_TOL) {
        return fail("p(B_eta) = 0", residual_eta);
    }
    let alpha_err = (alpha_geometric - al).abs();
    if !(alpha_err < CROSS_CHECK_TOL) {
        return fail("alpha closed form vs geometry", alpha_err);
    }
    let area_err = (cap_areas.0 - cap_areas.1).abs().max((cap_areas.2 - cap_areas.3).abs());
    if !(area_err < CROSS_CHECK_TOL) {
        return fail("cap areas closed form vs geometry", area_err);
    }
    for w in &witnesses {
        if !(w.residual < RESIDUAL_TOL) {
            return fail("witness residual", w.residual);
        }
    }
    let gap = preimage_roots[0].dist(preimage_roots[1]);
    if !(gap > 0.5 * eta) {
        return fail("distinct preimage roots", gap);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hausdorff, k_sub_z, polar_about};

    #[test]
    fn kab_vertices_and_centroid() {
        let k = body_kab(1.0, 2.0).unwrap();
        let want = Polygon::from_xy(&[(-5.0 / 9.0, -1.0), (4.0 / 9.0, -2.0), (4.0 / 9.0, 2.0), (-5.0 / 9.0, 1.0)]).unwrap();
        assert!(k.approx_eq(&want, 1e-15));
        assert!(k.centroid().norm() < 1e-15);
        assert!((kab_polar_centroid(1.0, 2.0) + 9.0 / 140.0).abs() < 1e-16);
        let g = polar_about(&k, Vec2::ZERO).unwrap().centroid();
        assert!(g.dist(vec2(-9.0 / 140.0, 0.0)) < 1e-12);
        assert!(body_kab(2.0, 1.0).is_err());
    }

    #[test]
    fn b_eta_is_the_projective_shift_of_the_square() {
        for i in 1..10 {
            let eta = i as f64 / 10.0;
            let got = b_eta(eta).unwrap();
            let want = k_sub_z(&unit_square(), vec2(eta, 0.0)).unwrap();
            assert!(hausdorff(&got, &want) < 1e-12);
            let polar = polar_about(&got, Vec2::ZERO).unwrap();
            let shifted = cross_polytope().translate(vec2(-eta, 0.0));
            assert!(hausdorff(&polar, &shifted) < 1e-12);
        }
        let half = b_eta(0.5).unwrap();
        let want = Polygon::from_xy(&[(-2.0 / 3.0, -2.0 / 3.0), (2.0, -2.0), (2.0, 2.0), (-2.0 / 3.0, 2.0 / 3.0)]).unwrap();
        assert!(half.approx_eq(&want, 1e-15));
        assert!(b_eta(0.0).is_err() && b_eta(1.0).is_err());
    }

    #[test]
    fn alpha_closed_form_and_geometry() {
        assert!((alpha(0.5).unwrap() + 27.0 / 910.0).abs() < 1e-17);
        assert!(alpha(1e-9).unwrap().abs() < 1e-9);
        for eta in [0.1, 0.25, 0.5, 0.75] {
            let d = (alpha_geometric(eta).unwrap() - alpha(eta).unwrap()).abs();
            assert!(d < 1e-10, "{eta}: {d}");
        }
    }

    #[test]
    fn cap_areas_match_closed_forms() {
        for eta in [0.25, 0.5, 0.75] {
            let eps = default_eps(eta).unwrap();
            let delta = eps / 3.0;
            let c = caps(&b_eta(eta).unwrap(), eps, delta);
            assert!((c.a.area() - cap_area_a(eta, eps).unwrap()).abs() < 1e-10);
            assert!((c.b.area() - cap_area_b(eta, delta).unwrap()).abs() < 1e-10);
            let al = alpha(eta).unwrap().abs();
            assert!(c.a.vertices().iter().all(|v| v.x <= -1.0 / (1.0 + eta) + eps / al + 1e-12));
        }
    }

    #[test]
    fn moment_balance_matches_clipped_caps() {
        let eta = 0.5;
        let eps = default_eps(eta).unwrap();
        let beta = b_eta(eta).unwrap();
        for i in 0..20 {
            let delta = eps * eps + (eps - eps * eps) * (i as f64 + 0.5) / 20.0;
            let c = caps(&beta, eps, delta);
            let (aa, ga) = c.a.area_centroid();
            let (ab, gb) = c.b.area_centroid();
            let geometric = aa * ga.x + ab * gb.x;
            let closed = moment_balance(delta, eta, eps).unwrap();
            assert!((geometric - closed).abs() < 1e-12);
            assert_eq!(geometric > 0.0, closed > 0.0);
        }
    }

    #[test]
    fn displayed_polynomial_sign_conditions() {
        let eta = 0.5;
        let eps = default_eps(eta).unwrap();
        assert!(f_eps(eps, eta, eps).unwrap() > 0.0);
        assert!(f_eps(eps * eps, eta, eps).unwrap() < 0.0);
        // its root is not where the caps balance
        let (mut lo, mut hi) = (eps * eps, eps);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if f_eps(mid, eta, eps).unwrap() < 0.0 { lo = mid } else { hi = mid }
        }
        let c = caps(&b_eta(eta).unwrap(), eps, lo);
        assert!(union_centroid(&c.a, &c.b).norm() > 1e-3);
    }

    #[test]
    fn solve_delta_brackets_and_balances() {
        for eta in [0.25, 0.5] {
            let eps = default_eps(eta).unwrap();
            let delta = solve_delta(eta, eps).unwrap();
            assert!(delta > eps * eps && delta < eps);
            assert!(moment_balance(delta, eta, eps).unwrap().abs() < 1e-13);
            assert!(eps + delta < disjointness_bound(eta).unwrap());
        }
        assert!(matches!(solve_delta(0.5, 0.5), Err(Error::NoRoot { .. })));
    }

    #[test]
    fn certificate_passes_and_sabotage_fails() {
        for eta in [0.25, 0.5] {
            let eps = default_eps(eta).unwrap();
            let cert = certify(eta, eps).unwrap();
            assert!(cert.residual_sym < 1e-9 && cert.residual_eta < 1e-9);
            assert!(cert.preimage_roots[0].norm() < 1e-6);
            assert!(cert.preimage_roots[1].dist(vec2(eta, 0.0)) < 1e-6);

            let bad = certify_with_delta(eta, eps, cert.delta * 1.1);
            assert!(matches!(bad, Err(Error::CertificationFailure { .. })));
            let c = caps(&b_eta(eta).unwrap(), eps, cert.delta * 1.1);
            assert!(union_centroid(&c.a, &c.b).norm() > 1e-6);
        }
    }
}
