//! Exact convex polygon algebra: canonical form, area and centroid,
//! clipping, polar duality, projective shifts and Hausdorff distance.

mod affine;
mod clip;
mod hausdorff;
mod polar;
mod polygon;

pub use affine::{affine_apply, AffineMap};
pub use clip::{clip_halfplane, intersect, Halfplane};
pub use hausdorff::hausdorff;
pub use polar::{k_sub_z, polar_about, polar_body};
pub use polygon::{
    canonicalize, cross_polytope, regular_polygon, standard_simplex, unit_square, Polygon,
    EPS_AREA, EPS_GEOM,
};
