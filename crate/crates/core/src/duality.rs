//! The duality algebra of affine invariant points: `φ_p(K) = K^{p(K)}`,
//! dual residuals, the product `[p, q]`, and the polar preimage problem.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{polar_about, polar_body, Polygon};
use crate::math::Vec2;
use crate::points::PointFunction;
use crate::random::{random_affine, rng};

/// `φ_p(K) = K^{p(K)}`.
pub fn phi(pf: &PointFunction, p: &Polygon) -> Result<Polygon> {
    polar_body(p, pf.point(p)?)
}

/// Relative dual residual `|q(φ_p(K)) − p(K)| / diam(K)` for one body.
pub fn dual_residual_one(p: &PointFunction, q: &PointFunction, k: &Polygon) -> Result<f64> {
    let x = p.point(k)?;
    let polar = polar_body(k, x)?;
    Ok(q.point(&polar)?.dist(x) / k.diam())
}

/// Aggregate of dual residuals over a batch of bodies.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub pair: (PointFunction, PointFunction),
    pub bodies_tested: usize,
    pub max_residual: f64,
    /// Index of the body with the largest residual.
    pub worst_body: Option<usize>,
    /// Bodies whose evaluation failed, with the error.
    pub failures: Vec<(usize, Error)>,
}

impl DualityReport {
    pub fn new(p: PointFunction, q: PointFunction) -> DualityReport {
        DualityReport {
            pair: (p, q),
            bodies_tested: 0,
            max_residual: 0.0,
            worst_body: None,
            failures: Vec::new(),
        }
    }

    /// Records the outcome for body `index`.
    pub fn record(&mut self, index: usize, outcome: Result<f64>) {
        self.bodies_tested += 1;
        match outcome {
            Ok(r) => {
                if self.worst_body.is_none() || r > self.max_residual {
                    self.max_residual = r;
                    self.worst_body = Some(index);
                }
            }
            Err(e) => self.failures.push((index, e)),
        }
    }

    /// Combines reports over disjoint index sets; the result does not depend
    /// on the order of merging.
    pub fn merge(mut self, other: DualityReport) -> DualityReport {
        self.bodies_tested += other.bodies_tested;
        let take = match (self.worst_body, other.worst_body) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(a), Some(b)) => {
                other.max_residual > self.max_residual || (other.max_residual == self.max_residual && b < a)
            }
        };
        if take {
            self.max_residual = other.max_residual;
            self.worst_body = other.worst_body;
        }
        self.failures.extend(other.failures);
        self.failures.sort_by_key(|f| f.0);
        self
    }

    /// No failures and every residual at most `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.failures.is_empty() && self.max_residual <= tol
    }
}

/// `max_K |q(φ_p(K)) − p(K)| / diam(K)`; per-body errors are recorded.
pub fn dual_residual(p: &PointFunction, q: &PointFunction, bodies: &[Polygon]) -> DualityReport {
    let mut report = DualityReport::new(*p, *q);
    for (i, k) in bodies.iter().enumerate() {
        report.record(i, dual_residual_one(p, q, k));
    }
    report
}

/// A point map built from point functions and the product `[p, q]`.
#[derive(Clone, Debug, PartialEq)]
pub enum PointMap {
    Base(PointFunction),
    /// `[p, q](r) = r∘φ_q∘φ_p − q∘φ_p + p`
    Product {
        p: PointFunction,
        q: PointFunction,
        r: Box<PointMap>,
    },
}

impl PointMap {
    pub fn product(p: PointFunction, q: PointFunction, r: PointMap) -> PointMap {
        PointMap::Product { p, q, r: Box::new(r) }
    }

    pub fn eval(&self, k: &Polygon) -> Result<Vec2> {
        match self {
            PointMap::Base(pf) => pf.point(k),
            PointMap::Product { p, q, r } => {
                let pk = p.point(k)?;
                let k1 = polar_body(k, pk)?;
                let qk1 = q.point(&k1)?;
                let k2 = polar_body(&k1, qk1)?;
                Ok(r.eval(&k2)? - qk1 + pk)
            }
        }
    }
}

impl From<PointFunction> for PointMap {
    fn from(pf: PointFunction) -> PointMap {
        PointMap::Base(pf)
    }
}

/// `[p, q](r)(K)`.
pub fn product_apply(p: &PointFunction, q: &PointFunction, r: &PointFunction, k: &Polygon) -> Result<Vec2> {
    PointMap::product(*p, *q, PointMap::Base(*r)).eval(k)
}

/// Largest `|p(T(K)) − T(p(K))| / diam(T(K))` over `trials` random affine
/// maps with condition number at most 50.
pub fn invariance_check(pf: &PointFunction, k: &Polygon, trials: usize, seed: u64) -> Result<f64> {
    let mut r = rng(seed);
    let base = pf.point(k)?;
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let t = random_affine(&mut r, 50.0);
        let tk = t.apply_polygon(k);
        let dev = pf.point(&tk)?.dist(t.apply(base)) / tk.diam();
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// `F(z) = p((C − z)°)`, the map whose zeros are polar preimages.
pub fn preimage_residual(pf: &PointFunction, c: &Polygon, z: Vec2) -> Result<(Vec2, f64)> {
    let polar = polar_about(c, z)?;
    Ok((pf.point(&polar)?, polar.diam()))
}

const PREIMAGE_TOL: f64 = 1e-8;
// iterations continue past the contract while they still make progress
const PREIMAGE_TARGET: f64 = 1e-12;

/// A point `z ∈ int(C)` with `p((C − z)°) = 0`, found from `init` by
/// Levenberg–Marquardt on `|F(z)|²` with a central-difference Jacobian.
/// Roots need not be unique; different starts may find different roots.
pub fn polar_preimage(pf: &PointFunction, c: &Polygon, init: Vec2) -> Result<Vec2> {
    const MAX_ITER: usize = 200;
    let diam = c.diam();
    let mut z = init;
    let (mut f, mut fd) = preimage_residual(pf, c, z)?;
    let mut mu = 1e-3;
    for _ in 0..MAX_ITER {
        if f.norm() < PREIMAGE_TARGET * fd {
            return Ok(z);
        }
        let room = c.boundary_distance(z);
        let h = (1e-7 * diam).min(0.25 * room);
        let mut eval = |y: Vec2| preimage_residual(pf, c, y).ok().map(|r| r.0);
        let j = crate::optim::jacobian(&mut eval, z, h).ok_or(Error::ConvergenceFailure {
            solver: "polar preimage",
            iterations: 0,
            residual: f.norm(),
        })?;
        let jt = j.transpose();
        let jtj = jt * j;
        let jtf = jt * f;
        let mut improved = false;
        for _ in 0..40 {
            let damp = mu * jtj.trace().max(f64::MIN_POSITIVE);
            let sys = jtj + crate::math::Mat2::diag(damp, damp);
            let Some(inv) = sys.inverse() else {
                mu *= 4.0;
                continue;
            };
            let mut step = -(inv * jtf);
            // keep the iterate well inside C
            if step.norm() > 0.5 * room {
                step = step * (0.5 * room / step.norm());
            }
            let trial = z + step;
            if let Ok((ft, fdt)) = preimage_residual(pf, c, trial) {
                if ft.norm() < f.norm() {
                    z = trial;
                    f = ft;
                    fd = fdt;
                    mu = (mu / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    if f.norm() < PREIMAGE_TOL * fd {
        return Ok(z);
    }
    Err(Error::ConvergenceFailure {
        solver: "polar preimage",
        iterations: MAX_ITER,
        residual: f.norm() / fd,
    })
}

/// Iterates `r_0 = p`, `r_{i+1} = [p, p](r_i)` and returns `r_0(K), …, r_k(K)`.
pub fn iterate_product(pf: &PointFunction, k: &Polygon, steps: usize) -> Result<Vec<Vec2>> {
    let mut map = PointMap::Base(*pf);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(map.eval(k)?);
    for _ in 0..steps {
        map = PointMap::product(*pf, *pf, map);
        out.push(map.eval(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cross_polytope, hausdorff, k_sub_z, regular_polygon, unit_square};
    use crate::math::vec2;
    use crate::random::random_body;

    const G: PointFunction = PointFunction::Centroid;
    const S: PointFunction = PointFunction::Santalo;

    #[test]
    fn phi_of_square_is_cross() {
        assert!(phi(&G, &unit_square()).unwrap().approx_eq(&cross_polytope(), 1e-15));
    }

    #[test]
    fn phi_round_trip() {
        let mut r = rng(21);
        for _ in 0..10 {
            let k = random_body(&mut r);
            let back = phi(&S, &phi(&G, &k).unwrap()).unwrap();
            assert!(hausdorff(&back, &k) < 1e-8 * k.diam());
            let back = phi(&G, &phi(&S, &k).unwrap()).unwrap();
            assert!(hausdorff(&back, &k) < 1e-8 * k.diam());
        }
    }

    #[test]
    fn report_merge_is_order_independent() {
        let bodies: Vec<Polygon> = {
            let mut r = rng(3);
            (0..6).map(|_| random_body(&mut r)).collect()
        };
        let whole = dual_residual(&G, &G, &bodies);
        let mut a = DualityReport::new(G, G);
        let mut b = DualityReport::new(G, G);
        for (i, k) in bodies.iter().enumerate() {
            let r = dual_residual_one(&G, &G, k);
            if i % 2 == 0 { a.record(i, r) } else { b.record(i, r) }
        }
        assert_eq!(a.clone().merge(b.clone()), whole);
        assert_eq!(b.merge(a), whole);
    }

    #[test]
    fn product_with_dual_is_identity_on_symmetric_and_random() {
        assert!(product_apply(&G, &S, &G, &unit_square()).unwrap().norm() < 1e-14);
        let mut r = rng(8);
        let k = random_body(&mut r);
        let want = G.point(&k).unwrap();
        let got = product_apply(&G, &S, &G, &k).unwrap();
        assert!(got.dist(want) < 1e-6 * k.diam());
    }

    #[test]
    fn preimage_of_centroid_is_santalo_point() {
        let mut r = rng(13);
        for _ in 0..5 {
            let c = random_body(&mut r);
            let z = polar_preimage(&G, &c, c.centroid()).unwrap();
            let s = S.point(&c).unwrap();
            assert!(z.dist(s) < 1e-7 * c.diam());
        }
        let z = polar_preimage(&G, &regular_polygon(5).unwrap(), vec2(0.1, 0.1)).unwrap();
        assert!(z.norm() < 1e-10);
    }

    #[test]
    fn invariance_of_centroid_is_exact() {
        let k = random_body(&mut rng(1));
        assert!(invariance_check(&G, &k, 10, 4).unwrap() < 1e-12);
    }

    #[test]
    fn ball_blow_up_rate() {
        let ball = regular_polygon(512).unwrap();
        for lam in [0.9, 0.99] {
            let kz = k_sub_z(&ball, vec2(lam, 0.0)).unwrap();
            let want = lam / (1.0 - lam * lam);
            let got = kz.centroid().norm();
            assert!((got / want - 1.0).abs() < 0.05, "{got} vs {want}");
        }
    }
}
