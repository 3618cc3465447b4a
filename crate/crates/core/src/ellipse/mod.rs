//! Ellipses, the John (maximal inscribed) and Löwner (minimal enclosing)
//! ellipses of a polygon, their fixed-center variants `f_K` and `λ_K`, and
//! certificates for John's optimality conditions.

mod nnls;

use alloc::vec::Vec;

use crate::barrier::{Cone, LogDetProgram};
use crate::error::{Error, Result};
use crate::geometry::{AffineMap, Polygon, EPS_GEOM};
use crate::math::{outer, vec2, Mat2, Vec2, PI};

/// Duality-gap target of the full John/Löwner solves.
const GAP_TOL: f64 = 1e-12;
/// Duality-gap target of the fixed-center solves used inside bisections.
const FIXED_GAP_TOL: f64 = 1e-11;
/// Contact activation threshold and residual bound of John certificates.
pub const CONTACT_TOL: f64 = 1e-6;

/// The set `{c + L u : |u| ≤ 1}` with `L` symmetric positive definite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipse {
    center: Vec2,
    shape: Mat2,
}

impl Ellipse {
    pub fn new(center: Vec2, shape: Mat2) -> Result<Ellipse> {
        let asym = (shape.b - shape.c).abs();
        if !(asym <= 1e-12 * shape.frobenius().max(1.0)) {
            return Err(Error::BadParams("ellipse shape must be symmetric"));
        }
        let shape = shape.symmetrize();
        let ([l0, _], _) = shape.sym_eigen();
        if !(l0 > EPS_GEOM) || !center.is_finite() {
            return Err(Error::BadParams("ellipse shape must be positive definite"));
        }
        Ok(Ellipse { center, shape })
    }

    pub fn unit_disk() -> Ellipse {
        Ellipse {
            center: Vec2::ZERO,
            shape: Mat2::IDENTITY,
        }
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    pub fn shape(&self) -> Mat2 {
        self.shape
    }

    pub fn area(&self) -> f64 {
        PI * self.shape.det()
    }

    fn shape_inverse(&self) -> Mat2 {
        self.shape.inverse().expect("positive definite")
    }

    /// `|L⁻¹(x − c)|`, which is `≤ 1` exactly on the ellipse.
    pub fn gauge(&self, x: Vec2) -> f64 {
        (self.shape_inverse() * (x - self.center)).norm()
    }

    pub fn contains(&self, x: Vec2, tol: f64) -> bool {
        self.gauge(x) <= 1.0 + tol
    }

    pub fn support(&self, u: Vec2) -> f64 {
        self.center.dot(u) + (self.shape * u).norm()
    }

    /// The map `y ↦ L⁻¹(y − c)` sending the ellipse onto the unit disk.
    pub fn normalizing_map(&self) -> AffineMap {
        let inv = self.shape_inverse();
        AffineMap::new(inv, -(inv * self.center)).expect("positive definite")
    }

    /// `T(E)`; the symmetric shape is the positive factor of the polar
    /// decomposition of `A L`.
    pub fn affine_image(&self, t: &AffineMap) -> Ellipse {
        let al = t.matrix() * self.shape;
        let shape = (al * al.transpose()).sym_sqrt();
        Ellipse {
            center: t.apply(self.center),
            shape,
        }
    }

    /// The polar `(E − c)°`, an origin-centered ellipse with shape `L⁻¹`.
    pub fn polar_about_center(&self) -> Ellipse {
        Ellipse {
            center: Vec2::ZERO,
            shape: self.shape_inverse(),
        }
    }

    /// `m` points on the boundary, counter-clockwise.
    pub fn boundary_points(&self, m: usize) -> Vec<Vec2> {
        (0..m)
            .map(|k| self.center + self.shape * Vec2::from_angle(2.0 * PI * k as f64 / m as f64))
            .collect()
    }

    pub fn approx_eq(&self, other: &Ellipse, tol: f64) -> bool {
        self.center.dist(other.center) <= tol && (self.shape - other.shape).frobenius() <= tol
    }
}

/// An ellipse solve with its solver statistics.
#[derive(Clone, Copy, Debug)]
pub struct EllipseSolve {
    pub ellipse: Ellipse,
    pub iterations: usize,
    pub gap: f64,
}

/// Working frame `x ↦ (x − origin)/scale` for conditioning.
struct Frame {
    origin: Vec2,
    scale: f64,
}

impl Frame {
    fn of(p: &Polygon, origin: Vec2) -> Frame {
        Frame {
            origin,
            scale: p.diam(),
        }
    }

    fn to_local(&self, x: Vec2) -> Vec2 {
        (x - self.origin) / self.scale
    }
}

/// Outward normals and offsets `<a_i, x> ≤ b_i` of the edges, in a frame.
fn edge_constraints(p: &Polygon, frame: &Frame) -> Vec<(Vec2, f64)> {
    (0..p.len())
        .map(|i| {
            let a = p.edge_normal(i);
            (a, a.dot(frame.to_local(p.vertex(i))))
        })
        .collect()
}

/// Maximal-area ellipse contained in `p`.
pub fn john_ellipse(p: &Polygon) -> Result<Ellipse> {
    Ok(john_ellipse_solve(p)?.ellipse)
}

pub fn john_ellipse_solve(p: &Polygon) -> Result<EllipseSolve> {
    let frame = Frame::of(p, p.centroid());
    let cons = edge_constraints(p, &frame);
    let cones = cons
        .iter()
        .map(|&(a, b)| Cone::<5> {
            s0: b,
            ds: [0.0, 0.0, 0.0, -a.x, -a.y],
            y0: [0.0; 2],
            jy: [[a.x, a.y, 0.0, 0.0, 0.0], [0.0, a.x, a.y, 0.0, 0.0]],
        })
        .collect();
    let prog = LogDetProgram { cones };
    let r0 = 0.5 * cons.iter().map(|&(_, b)| b).fold(f64::INFINITY, f64::min);
    let sol = prog.solve([r0, 0.0, r0, 0.0, 0.0], GAP_TOL)?;
    let [lp, lq, lr, c1, c2] = sol.x;
    let ellipse = Ellipse::new(
        frame.origin + vec2(c1, c2) * frame.scale,
        Mat2::sym(lp, lq, lr) * frame.scale,
    )?;
    Ok(EllipseSolve {
        ellipse,
        iterations: sol.iterations,
        gap: sol.gap,
    })
}

/// Minimal-area ellipse containing `p`.
pub fn loewner_ellipse(p: &Polygon) -> Result<Ellipse> {
    Ok(loewner_ellipse_solve(p)?.ellipse)
}

pub fn loewner_ellipse_solve(p: &Polygon) -> Result<EllipseSolve> {
    let frame = Frame::of(p, p.centroid());
    let local: Vec<Vec2> = p.vertices().iter().map(|&v| frame.to_local(v)).collect();
    // E = {x : |Mx + b| ≤ 1}
    let cones = local
        .iter()
        .map(|v| Cone::<5> {
            s0: 1.0,
            ds: [0.0; 5],
            y0: [0.0; 2],
            jy: [[v.x, v.y, 0.0, 1.0, 0.0], [0.0, v.x, v.y, 0.0, 1.0]],
        })
        .collect();
    let prog = LogDetProgram { cones };
    let radius = local.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let m0 = 0.5 / radius;
    let sol = prog.solve([m0, 0.0, m0, 0.0, 0.0], GAP_TOL)?;
    let [mp, mq, mr, b1, b2] = sol.x;
    let shape_local = Mat2::sym(mp, mq, mr)
        .inverse()
        .ok_or(Error::BadParams("degenerate Löwner iterate"))?;
    let center_local = -(shape_local * vec2(b1, b2));
    let ellipse = Ellipse::new(
        frame.origin + center_local * frame.scale,
        shape_local.symmetrize() * frame.scale,
    )?;
    Ok(EllipseSolve {
        ellipse,
        iterations: sol.iterations,
        gap: sol.gap,
    })
}

/// `f_K(x)`: the largest area of an ellipse centered at `x` inside `p`;
/// zero off the interior.
pub fn max_centered_area(p: &Polygon, x: Vec2) -> f64 {
    max_centered_ellipse(p, x).map_or(0.0, |e| e.area())
}

/// The maximizer behind [`max_centered_area`], `None` off the interior.
pub fn max_centered_ellipse(p: &Polygon, x: Vec2) -> Option<Ellipse> {
    let frame = Frame::of(p, x);
    if !(p.boundary_distance(x) > EPS_GEOM * frame.scale) {
        return None;
    }
    let cons = edge_constraints(p, &frame);
    let cones = cons
        .iter()
        .map(|&(a, b)| Cone::<3> {
            s0: b,
            ds: [0.0; 3],
            y0: [0.0; 2],
            jy: [[a.x, a.y, 0.0], [0.0, a.x, a.y]],
        })
        .collect();
    let prog = LogDetProgram { cones };
    let r0 = 0.5 * cons.iter().map(|&(_, b)| b).fold(f64::INFINITY, f64::min);
    let sol = prog.solve([r0, 0.0, r0], FIXED_GAP_TOL).ok()?;
    let [lp, lq, lr] = sol.x;
    Ellipse::new(x, Mat2::sym(lp, lq, lr) * frame.scale).ok()
}

/// `λ_K(x)`: the reciprocal of the least area of an ellipse centered at `x`
/// containing `p`. Defined and positive for every `x`.
pub fn min_centered_inverse_area(p: &Polygon, x: Vec2) -> f64 {
    let frame = Frame::of(p, x);
    let local: Vec<Vec2> = p.vertices().iter().map(|&v| frame.to_local(v)).collect();
    let cones = local
        .iter()
        .map(|d| Cone::<3> {
            s0: 1.0,
            ds: [0.0; 3],
            y0: [0.0; 2],
            jy: [[d.x, d.y, 0.0], [0.0, d.x, d.y]],
        })
        .collect();
    let prog = LogDetProgram { cones };
    let radius = local.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let m0 = 0.5 / radius;
    match prog.solve([m0, 0.0, m0], FIXED_GAP_TOL) {
        Ok(sol) => {
            let [mp, mq, mr] = sol.x;
            (mp * mr - mq * mq) / (PI * frame.scale * frame.scale)
        }
        // the enclosing circle is always feasible; fall back to it
        Err(_) => 1.0 / (PI * radius * radius * frame.scale * frame.scale),
    }
}

/// Which side of the body the ellipse sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactMode {
    /// The ellipse is inside the body (John position).
    Inscribed,
    /// The ellipse contains the body (Löwner position).
    Enclosing,
}

/// Contact directions and weights witnessing John's conditions
/// `Σ cᵢuᵢ = 0`, `Σ cᵢuᵢuᵢᵀ = I` after normalizing the ellipse to the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct JohnCertificate {
    pub contacts: Vec<(Vec2, f64)>,
    pub residual_sum: Vec2,
    pub residual_identity: f64,
}

impl JohnCertificate {
    pub fn max_residual(&self) -> f64 {
        self.residual_sum.norm().max(self.residual_identity)
    }
}

/// Checks John's conditions for `e` relative to `p` in the given mode.
pub fn verify_john_conditions(p: &Polygon, e: &Ellipse, mode: ContactMode) -> Result<JohnCertificate> {
    let t = e.normalizing_map();
    let verts: Vec<Vec2> = p.vertices().iter().map(|&v| t.apply(v)).collect();
    let n = verts.len();

    let mut dirs = Vec::new();
    match mode {
        ContactMode::Inscribed => {
            // L⁻¹ is positive definite, so orientation is preserved
            for i in 0..n {
                let (a, b) = (verts[i], verts[(i + 1) % n]);
                let ed = b - a;
                let normal = vec2(ed.y, -ed.x).normalized();
                let dist = normal.dot(a);
                if dist < 1.0 - CONTACT_TOL {
                    return Err(Error::JohnConditionsFailed {
                        residual: 1.0 - dist,
                    });
                }
                if dist <= 1.0 + CONTACT_TOL {
                    dirs.push(normal);
                }
            }
        }
        ContactMode::Enclosing => {
            for v in &verts {
                let r = v.norm();
                if r > 1.0 + CONTACT_TOL {
                    return Err(Error::JohnConditionsFailed { residual: r - 1.0 });
                }
                if r >= 1.0 - CONTACT_TOL {
                    dirs.push(*v / r);
                }
            }
        }
    }
    if dirs.is_empty() {
        return Err(Error::NoContacts);
    }

    let s2 = core::f64::consts::SQRT_2;
    let cols: Vec<[f64; 5]> = dirs
        .iter()
        .map(|u| [u.x, u.y, u.x * u.x, s2 * u.x * u.y, u.y * u.y])
        .collect();
    let weights = nnls::nnls5(&cols, [0.0, 0.0, 1.0, 0.0, 1.0]);

    let mut contacts = Vec::new();
    let mut sum = Vec2::ZERO;
    let mut ident = Mat2::new(0.0, 0.0, 0.0, 0.0);
    for (u, &c) in dirs.iter().zip(&weights) {
        if c > 1e-12 {
            contacts.push((*u, c));
            sum += *u * c;
            ident = ident + outer(*u, *u) * c;
        }
    }
    let cert = JohnCertificate {
        contacts,
        residual_sum: sum,
        residual_identity: (ident - Mat2::IDENTITY).frobenius(),
    };
    let residual = cert.max_residual();
    if residual < CONTACT_TOL && (3..=6).contains(&cert.contacts.len()) {
        Ok(cert)
    } else {
        Err(Error::JohnConditionsFailed { residual })
    }
}
