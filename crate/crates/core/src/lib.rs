//! Affine invariant points of planar convex bodies and their polar duality.
//!
//! Bodies are convex polygons in canonical form ([`Polygon`]); ellipses are
//! handled analytically ([`Ellipse`]). On top of the kernel sit the classical
//! invariant points (centroid, Santaló, John, Löwner, symmetric core, the cap
//! family), the invariant set maps built from them, the duality algebra
//! `φ_p`, `[p, q]`, and a certified non-injectivity construction.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
// negated comparisons are how NaN is rejected; index loops mirror the formulas
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod counterexample;
pub mod duality;
pub mod ellipse;
pub mod error;
pub mod geometry;
pub mod math;
mod optim;
pub mod points;
pub mod random;
pub mod regions;

mod barrier;

pub use ellipse::Ellipse;
pub use error::{Error, Result};
pub use geometry::{AffineMap, Halfplane, Polygon};
pub use math::{vec2, Mat2, Vec2};
pub use points::{eval_point, PointFunction, PointResult};
