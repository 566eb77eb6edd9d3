//! Error type shared by every module.

use core::fmt;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its valid range.
    InvalidParameter {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
    },
    /// A field was requested at (or within `rho_min` of) a singular point.
    SingularEvaluation {
        /// Distance from the singular point.
        distance: f64,
    },
    /// A masking force lies inside the exclusion ball around the source.
    ForcePlacement {
        /// Distance of the force from the source center.
        distance: f64,
        /// Exclusion radius.
        exclusion_radius: f64,
    },
    /// The requested geometry cannot be realized (e.g. exclusion ball reaches the sensor).
    Geometry(&'static str),
    /// The operation only supports a subset of source kinds.
    UnsupportedSource(&'static str),
    /// The normalized residual is undefined because the source amplitude vanishes.
    UndefinedMetric,
    /// The spline needs at least four panels.
    InvalidPanelCount(usize),
    /// Dimensions of inputs do not agree.
    DimensionMismatch {
        /// Expected length.
        expected: usize,
        /// Actual length.
        found: usize,
    },
    /// A matrix that must be positive definite is not.
    NotPositiveDefinite,
}

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter `{name}` = {value}")
            }
            Error::SingularEvaluation { distance } => {
                write!(f, "singular evaluation at distance {distance:e} from a point source")
            }
            Error::ForcePlacement {
                distance,
                exclusion_radius,
            } => write!(
                f,
                "masking force at distance {distance} lies inside the exclusion ball of radius {exclusion_radius}"
            ),
            Error::Geometry(msg) => write!(f, "invalid geometry: {msg}"),
            Error::UnsupportedSource(msg) => write!(f, "unsupported source: {msg}"),
            Error::UndefinedMetric => {
                write!(f, "normalized residual undefined: source amplitude is zero")
            }
            Error::InvalidPanelCount(n) => {
                write!(f, "spline needs at least 4 panels, got {n}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}
