use core::fmt;

/// Errors produced by the geometric kernel and the solvers built on it.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// The input points do not span the plane (hull is a point or a segment).
    DegenerateInput,
    /// The polar center is not interior to the body with the required margin.
    PointNotInterior { margin: f64 },
    /// `K_z` requested with `z` outside the interior of the polar body.
    ShiftOutOfRange { support: f64 },
    SingularMap { det: f64 },
    ConvergenceFailure {
        solver: &'static str,
        iterations: usize,
        residual: f64,
    },
    /// No boundary contact between the normalized body and the unit disk.
    NoContacts,
    /// Contacts were found but the John identities could not be met.
    JohnConditionsFailed { residual: f64 },
    EmptyResult,
    BadParams(&'static str),
    NoRoot { lo: f64, hi: f64 },
    CertificationFailure { check: &'static str, residual: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInput => write!(f, "degenerate input: points do not span the plane"),
            Error::PointNotInterior { margin } => {
                write!(f, "point is not interior (boundary distance {margin:e})")
            }
            Error::ShiftOutOfRange { support } => {
                write!(f, "shift out of range: max <x, z> over the body is {support}")
            }
            Error::SingularMap { det } => write!(f, "singular affine map (det = {det:e})"),
            Error::ConvergenceFailure {
                solver,
                iterations,
                residual,
            } => write!(
                f,
                "{solver} failed to converge after {iterations} iterations (residual {residual:e})"
            ),
            Error::NoContacts => write!(f, "no contact points between body and unit disk"),
            Error::JohnConditionsFailed { residual } => {
                write!(f, "John conditions not satisfied (residual {residual:e})")
            }
            Error::EmptyResult => write!(f, "result is empty"),
            Error::BadParams(msg) => write!(f, "bad parameters: {msg}"),
            Error::NoRoot { lo, hi } => write!(f, "no sign change on [{lo:e}, {hi:e}]"),
            Error::CertificationFailure { check, residual } => {
                write!(f, "certification failed: {check} (residual {residual:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
