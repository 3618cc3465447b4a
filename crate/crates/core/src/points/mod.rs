//! Affine invariant points of polygons.

mod caps;
mod santalo;
mod symcore;

use core::fmt;

pub use caps::{cap_point, caps, union_centroid, Caps};
pub use santalo::{santalo_gradient, santalo_point, santalo_solve};
pub use symcore::{symcore_gradient, symcore_point, symcore_solve, symmetric_core_area};

use crate::ellipse::{john_ellipse_solve, loewner_ellipse_solve};
use crate::error::{Error, Result};
use crate::geometry::Polygon;
use crate::math::Vec2;

/// An affine invariant point, identified by kind and parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointFunction {
    /// Centroid `g`.
    Centroid,
    /// Santaló point `s`: minimizer of the polar area.
    Santalo,
    /// Center `j` of the John (maximal inscribed) ellipse.
    John,
    /// Center `l` of the Löwner (minimal enclosing) ellipse.
    Loewner,
    /// Maximizer `m` of `area(K ∩ (2x − K))`.
    Symcore,
    /// Centroid of two opposite caps `p_{ε,δ}`.
    CapFamily { eps: f64, delta: f64 },
}

impl PointFunction {
    pub const NAMED: [PointFunction; 5] = [
        PointFunction::Centroid,
        PointFunction::Santalo,
        PointFunction::John,
        PointFunction::Loewner,
        PointFunction::Symcore,
    ];

    pub fn cap_family(eps: f64, delta: f64) -> Result<PointFunction> {
        if !(eps > 0.0 && delta > 0.0 && eps.is_finite() && delta.is_finite()) {
            return Err(Error::BadParams("capfamily needs eps > 0 and delta > 0"));
        }
        Ok(PointFunction::CapFamily { eps, delta })
    }

    pub fn id(&self) -> &'static str {
        match self {
            PointFunction::Centroid => "centroid",
            PointFunction::Santalo => "santalo",
            PointFunction::John => "john",
            PointFunction::Loewner => "loewner",
            PointFunction::Symcore => "symcore",
            PointFunction::CapFamily { .. } => "capfamily",
        }
    }

    /// Parses a parameter-free id.
    pub fn from_id(id: &str) -> Option<PointFunction> {
        PointFunction::NAMED.iter().copied().find(|p| p.id() == id)
    }

    /// Every supported point lies in the interior of its body.
    pub fn is_proper(&self) -> bool {
        true
    }

    pub fn eval(&self, p: &Polygon) -> Result<PointResult> {
        eval_point(self, p)
    }

    pub fn point(&self, p: &Polygon) -> Result<Vec2> {
        Ok(eval_point(self, p)?.value)
    }
}

impl fmt::Display for PointFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointFunction::CapFamily { eps, delta } => write!(f, "capfamily({eps}, {delta})"),
            other => f.write_str(other.id()),
        }
    }
}

/// An evaluated point with solver diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointResult {
    pub value: Vec2,
    pub iterations: usize,
    /// Solver-specific optimality residual (zero for closed forms).
    pub residual: f64,
}

impl PointResult {
    fn exact(value: Vec2) -> PointResult {
        PointResult {
            value,
            iterations: 0,
            residual: 0.0,
        }
    }
}

pub fn eval_point(pf: &PointFunction, p: &Polygon) -> Result<PointResult> {
    match *pf {
        PointFunction::Centroid => Ok(PointResult::exact(p.centroid())),
        PointFunction::Santalo => santalo_solve(p),
        PointFunction::John => {
            let s = john_ellipse_solve(p)?;
            Ok(PointResult {
                value: s.ellipse.center(),
                iterations: s.iterations,
                residual: s.gap,
            })
        }
        PointFunction::Loewner => {
            let s = loewner_ellipse_solve(p)?;
            Ok(PointResult {
                value: s.ellipse.center(),
                iterations: s.iterations,
                residual: s.gap,
            })
        }
        PointFunction::Symcore => symcore_solve(p),
        PointFunction::CapFamily { eps, delta } => {
            PointFunction::cap_family(eps, delta)?;
            Ok(PointResult::exact(cap_point(p, eps, delta)))
        }
    }
}
