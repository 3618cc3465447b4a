use alloc::vec::Vec;

use super::polygon::{canonicalize, Polygon, EPS_GEOM};
use crate::error::{Error, Result};
use crate::math::{Mat2, Vec2};

/// A one-to-one affine map `x ↦ Ax + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineMap {
    matrix: Mat2,
    translation: Vec2,
}

impl AffineMap {
    pub fn new(matrix: Mat2, translation: Vec2) -> Result<AffineMap> {
        let det = matrix.det();
        if !(det.abs() > EPS_GEOM) || !det.is_finite() || !translation.is_finite() {
            return Err(Error::SingularMap { det });
        }
        Ok(AffineMap {
            matrix,
            translation,
        })
    }

    pub fn linear(matrix: Mat2) -> Result<AffineMap> {
        AffineMap::new(matrix, Vec2::ZERO)
    }

    pub fn identity() -> AffineMap {
        AffineMap {
            matrix: Mat2::IDENTITY,
            translation: Vec2::ZERO,
        }
    }

    pub fn translation_by(t: Vec2) -> AffineMap {
        AffineMap {
            matrix: Mat2::IDENTITY,
            translation: t,
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    pub fn translation(&self) -> Vec2 {
        self.translation
    }

    pub fn det(&self) -> f64 {
        self.matrix.det()
    }

    #[inline]
    pub fn apply(&self, x: Vec2) -> Vec2 {
        self.matrix * x + self.translation
    }

    /// Image of a vector (no translation).
    #[inline]
    pub fn apply_linear(&self, v: Vec2) -> Vec2 {
        self.matrix * v
    }

    pub fn inverse(&self) -> AffineMap {
        // det was checked at construction
        let inv = self.matrix.inverse().expect("nonsingular by construction");
        AffineMap {
            matrix: inv,
            translation: -(inv * self.translation),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            matrix: self.matrix * other.matrix,
            translation: self.matrix * other.translation + self.translation,
        }
    }

    /// The adjoint inverse `A*⁻¹ = (Aᵀ)⁻¹`, which carries polars of linear images.
    pub fn adjoint_inverse(&self) -> Mat2 {
        self.matrix
            .transpose()
            .inverse()
            .expect("nonsingular by construction")
    }

    /// Vertex-wise image, canonicalized.
    pub fn apply_polygon(&self, p: &Polygon) -> Polygon {
        let pts: Vec<Vec2> = p.vertices().iter().map(|&v| self.apply(v)).collect();
        canonicalize(&pts).expect("nonsingular image of a convex body is a convex body")
    }
}

/// `T(P)` for a nonsingular affine `T`.
pub fn affine_apply(t: &AffineMap, p: &Polygon) -> Polygon {
    t.apply_polygon(p)
}
