//! Small fixed-size linear algebra for the plane, on top of `libm`.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

pub const PI: f64 = core::f64::consts::PI;

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[inline]
pub const fn vec2(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

impl Vec2 {
    pub const ZERO: Vec2 = vec2(0.0, 0.0);

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        hypot(self.x, self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Counter-clockwise rotation by a right angle.
    #[inline]
    pub fn perp(self) -> Vec2 {
        vec2(-self.y, self.x)
    }

    pub fn normalized(self) -> Vec2 {
        let n = self.norm();
        vec2(self.x / n, self.y / n)
    }

    #[inline]
    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn from_angle(theta: f64) -> Vec2 {
        vec2(cos(theta), sin(theta))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        vec2(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        vec2(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        vec2(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        vec2(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, s: f64) -> Vec2 {
        vec2(self.x / s, self.y / s)
    }
}

/// Row-major 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub const fn diag(x: f64, y: f64) -> Mat2 {
        Mat2::new(x, 0.0, 0.0, y)
    }

    pub fn sym(p: f64, q: f64, r: f64) -> Mat2 {
        Mat2::new(p, q, q, r)
    }

    pub fn scale(s: f64) -> Mat2 {
        Mat2::diag(s, s)
    }

    pub fn rotation(theta: f64) -> Mat2 {
        let (s, c) = (sin(theta), cos(theta));
        Mat2::new(c, -s, s, c)
    }

    #[inline]
    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    /// `None` when the matrix is singular to working precision.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        let scale = self.frobenius();
        if !(det.abs() > 1e-300 && det.abs() > f64::EPSILON * scale * scale * 1e-3) {
            return None;
        }
        Some(Mat2::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    pub fn frobenius(&self) -> f64 {
        sqrt(self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d)
    }

    /// Symmetric part `(M + Mᵀ)/2`.
    pub fn symmetrize(&self) -> Mat2 {
        let off = 0.5 * (self.b + self.c);
        Mat2::new(self.a, off, off, self.d)
    }

    pub fn col0(&self) -> Vec2 {
        vec2(self.a, self.c)
    }

    pub fn col1(&self) -> Vec2 {
        vec2(self.b, self.d)
    }

    /// Eigen-decomposition of the symmetric part: eigenvalues ascending and
    /// the matching unit eigenvectors.
    pub fn sym_eigen(&self) -> ([f64; 2], [Vec2; 2]) {
        let s = self.symmetrize();
        let mean = 0.5 * (s.a + s.d);
        let half_diff = 0.5 * (s.a - s.d);
        let rad = hypot(half_diff, s.b);
        let (l0, l1) = (mean - rad, mean + rad);
        if rad == 0.0 {
            return ([l0, l1], [vec2(1.0, 0.0), vec2(0.0, 1.0)]);
        }
        // angle of the eigenvector belonging to the larger eigenvalue
        let theta = 0.5 * atan2(s.b, half_diff);
        let v1 = Vec2::from_angle(theta);
        ([l0, l1], [v1.perp(), v1])
    }

    /// Principal square root of a symmetric positive semi-definite matrix.
    pub fn sym_sqrt(&self) -> Mat2 {
        let ([l0, l1], [v0, v1]) = self.sym_eigen();
        let (r0, r1) = (sqrt(l0.max(0.0)), sqrt(l1.max(0.0)));
        outer(v0, v0) * r0 + outer(v1, v1) * r1
    }

    /// Condition number in the spectral norm.
    pub fn cond(&self) -> f64 {
        let ata = self.transpose() * *self;
        let ([l0, l1], _) = ata.sym_eigen();
        if l0 <= 0.0 {
            return f64::INFINITY;
        }
        sqrt(l1 / l0)
    }
}

/// `u vᵀ`.
pub fn outer(u: Vec2, v: Vec2) -> Mat2 {
    Mat2::new(u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y)
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        vec2(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}
