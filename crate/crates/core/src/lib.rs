//! Quasi-steady fields of sinusoidally forced, spherically symmetric sources
//! in the 3D wave equation, and the design of interference forces that mask
//! such a source in a target region.
//!
//! The crate is `no_std` and only needs `alloc`. All floating point math goes
//! through `libm`, so results are reproducible across targets.
//!
//! Layout:
//!
//! * [`types`], [`geometry`], [`phasor`]: shared domain values and the phasor
//!   convention `u(x, t) = Im(U e^{iωt})`.
//! * [`analytic`]: closed-form quasi-steady coefficients and the exact
//!   transient solution for the truncated-sinc profile.
//! * [`oracle`]: independent Duhamel-integral quadrature used to check every
//!   closed form.
//! * [`masking`]: shell, one-force and two-force masking designs and the
//!   normalized residual amplitude metric.
//! * [`region`]: min-max optimization of the two phase shifts over a finite
//!   target ball.
//! * [`kernel`]: kernel-superposition synthesis for profiles without
//!   spherical symmetry.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod analytic;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod linalg;
pub mod masking;
pub mod oracle;
pub mod phasor;
pub mod quad;
pub mod region;
pub mod simplex;
pub mod special;
pub mod types;

pub use error::{Error, Result};
pub use geometry::Vec3;
pub use phasor::Phasor;
pub use types::{Medium, PointForce, SourceKind, SourceSpec, TargetRegion};
