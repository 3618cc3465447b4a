use aip_core::duality::{invariance_check, polar_preimage, product_apply};
use aip_core::ellipse::{
    john_ellipse, loewner_ellipse, max_centered_area, min_centered_inverse_area, verify_john_conditions, ContactMode,
};
use aip_core::geometry::{hausdorff, polar_body, standard_simplex, unit_square};
use aip_core::math::vec2;
use aip_core::random::{interior_point, random_affine, random_body, random_hull, rng};
use aip_core::{counterexample, PointFunction, Polygon, Vec2};
use rand::Rng;

fn all_points() -> Vec<PointFunction> {
    let mut v = PointFunction::NAMED.to_vec();
    v.push(PointFunction::cap_family(0.1, 0.05).unwrap());
    v
}

#[test]
fn every_point_is_equivariant() {
    let mut r = rng(31);
    for pf in all_points() {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let k = random_body(&mut r);
            let t = random_affine(&mut r, 10.0);
            let tk = t.apply_polygon(&k);
            let dev = pf.point(&tk).unwrap().dist(t.apply(pf.point(&k).unwrap())) / tk.diam();
            worst = worst.max(dev);
        }
        assert!(worst < 1e-6, "{pf}: {worst:e}");
    }
}

#[test]
fn every_point_is_proper() {
    let mut bodies: Vec<Polygon> = vec![unit_square(), standard_simplex(), counterexample::b_eta(0.5).unwrap()];
    let mut r = rng(32);
    bodies.extend((0..20).map(|_| random_body(&mut r)));
    for k in &bodies {
        for pf in all_points() {
            let x = pf.point(k).unwrap();
            assert!(k.boundary_distance(x) > 0.0, "{pf} left the interior");
        }
    }
}

#[test]
fn points_are_continuous() {
    let mut r = rng(33);
    for _ in 0..10 {
        let k = random_body(&mut r);
        let d = k.diam();
        let moved: Vec<Vec2> = k
            .vertices()
            .iter()
            .map(|&v| v + vec2(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)) * (0.5e-4 * d))
            .collect();
        let k2 = Polygon::new(&moved).unwrap();
        assert!(hausdorff(&k, &k2) <= 1e-4 * d);
        for pf in all_points() {
            let gap = pf.point(&k).unwrap().dist(pf.point(&k2).unwrap());
            assert!(gap <= 1e-2 * d, "{pf}: {gap}");
        }
    }
}

#[test]
fn invariance_check_budgets() {
    let k = random_body(&mut rng(34));
    assert!(invariance_check(&PointFunction::Centroid, &k, 20, 1).unwrap() < 1e-12);
    assert!(invariance_check(&PointFunction::Santalo, &k, 20, 2).unwrap() < 1e-6);
    let t = random_hull(&mut rng(35), 3);
    let caps = PointFunction::cap_family(0.1, 0.05).unwrap();
    assert!(invariance_check(&caps, &t, 20, 3).unwrap() < 1e-8);
}

#[test]
fn john_ellipse_is_equivariant_and_certified() {
    let mut r = rng(36);
    for _ in 0..20 {
        let k = random_body(&mut r);
        let t = random_affine(&mut r, 10.0);
        let tk = t.apply_polygon(&k);
        let e = john_ellipse(&k).unwrap();
        let te = john_ellipse(&tk).unwrap();
        assert!(te.approx_eq(&e.affine_image(&t), 1e-7 * tk.diam()));
        verify_john_conditions(&tk, &te, ContactMode::Inscribed).unwrap();
        let l = loewner_ellipse(&tk).unwrap();
        verify_john_conditions(&tk, &l, ContactMode::Enclosing).unwrap();
    }
}

#[test]
fn triangle_ellipses_are_steiner() {
    let mut r = rng(37);
    for _ in 0..10 {
        let t = random_hull(&mut r, 3);
        if t.len() != 3 {
            continue;
        }
        let g = t.centroid();
        let inner = john_ellipse(&t).unwrap();
        let outer = loewner_ellipse(&t).unwrap();
        assert!(inner.center().dist(g) < 1e-9 * t.diam());
        assert!(outer.center().dist(g) < 1e-9 * t.diam());
        // Steiner ellipses: the circumellipse is the inellipse scaled by 2
        assert!((outer.area() / inner.area() - 4.0).abs() < 1e-8);
        let twice = (inner.shape() * 2.0 - outer.shape()).frobenius();
        assert!(twice < 1e-8 * t.diam());
        // area ratio of the Steiner inellipse to the triangle is π/(3√3)
        let ratio = inner.area() / t.area();
        assert!((ratio - core::f64::consts::PI / (3.0 * 3f64.sqrt())).abs() < 1e-9);
    }
}

#[test]
fn centered_functions_transform_with_the_determinant() {
    let mut r = rng(38);
    for _ in 0..10 {
        let k = random_body(&mut r);
        let x = interior_point(&mut r, &k, 0.2);
        let t = random_affine(&mut r, 10.0);
        let tk = t.apply_polygon(&k);
        let det = t.det().abs();
        let f = max_centered_area(&k, x);
        let tf = max_centered_area(&tk, t.apply(x));
        assert!((tf - det * f).abs() < 1e-8 * tf);
        let l = min_centered_inverse_area(&k, x);
        let tl = min_centered_inverse_area(&tk, t.apply(x));
        assert!((tl - l / det).abs() < 1e-8 * tl);
    }
}

#[test]
fn john_and_loewner_points_are_polar_dual() {
    let mut r = rng(39);
    for _ in 0..10 {
        let k = random_body(&mut r);
        let j = PointFunction::John.point(&k).unwrap();
        let l_of_polar = PointFunction::Loewner.point(&polar_body(&k, j).unwrap()).unwrap();
        assert!(l_of_polar.dist(j) < 1e-7 * k.diam());
        let l = PointFunction::Loewner.point(&k).unwrap();
        let j_of_polar = PointFunction::John.point(&polar_body(&k, l).unwrap()).unwrap();
        assert!(j_of_polar.dist(l) < 1e-7 * k.diam());
    }
}

#[test]
fn centroid_is_not_self_dual_on_the_trapezoid() {
    let k = counterexample::body_kab(1.0, 2.0).unwrap();
    let g = PointFunction::Centroid;
    let polar = polar_body(&k, Vec2::ZERO).unwrap();
    let residual = g.point(&polar).unwrap().norm();
    assert!((residual - 9.0 / 140.0).abs() < 1e-9);
    // the product [g, g] is then not the identity
    let off = product_apply(&g, &g, &g, &k).unwrap();
    assert!(off.norm() > 1e-3);
}

#[test]
fn cap_point_has_two_polar_preimages() {
    let eta = 0.5;
    let eps = counterexample::default_eps(eta).unwrap();
    let delta = counterexample::solve_delta(eta, eps).unwrap();
    let pf = PointFunction::cap_family(eps, delta).unwrap();
    let c = aip_core::geometry::cross_polytope();
    let z1 = polar_preimage(&pf, &c, Vec2::ZERO).unwrap();
    let z2 = polar_preimage(&pf, &c, vec2(0.9 * eta, 0.0)).unwrap();
    assert!(z1.norm() < 1e-8);
    assert!(z2.dist(vec2(eta, 0.0)) < 1e-8);
}

#[test]
fn certificate_survives_affine_images() {
    let eta = 0.5;
    let eps = counterexample::default_eps(eta).unwrap();
    let delta = counterexample::solve_delta(eta, eps).unwrap();
    let pf = PointFunction::cap_family(eps, delta).unwrap();
    let mut r = rng(40);
    for _ in 0..10 {
        let t = random_affine(&mut r, 10.0);
        for k in [unit_square(), counterexample::b_eta(eta).unwrap()] {
            let tk = t.apply_polygon(&k);
            let dev = pf.point(&tk).unwrap().dist(t.apply(Vec2::ZERO));
            assert!(dev < 1e-7 * tk.diam(), "{dev}");
        }
    }
}
