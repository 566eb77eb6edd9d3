//! Shared domain values.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::error::{check_positive, Error, Result};
use crate::geometry::Vec3;

/// Propagation medium together with the driving frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    c: f64,
    omega: f64,
}

impl Medium {
    /// Medium with wave speed `c` (m/s) driven at angular frequency `omega` (rad/s).
    pub fn new(c: f64, omega: f64) -> Result<Self> {
        check_positive("c", c)?;
        check_positive("omega", omega)?;
        Ok(Medium { c, omega })
    }

    /// Medium driven at `frequency` in Hz.
    pub fn from_frequency(c: f64, frequency: f64) -> Result<Self> {
        check_positive("frequency", frequency)?;
        Medium::new(c, TAU * frequency)
    }

    /// Wave speed (m/s).
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Angular frequency (rad/s).
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Wavelength `λ = 2πc/ω` (m).
    pub fn wavelength(&self) -> f64 {
        TAU * self.c / self.omega
    }

    /// Wavenumber `ω/c` (rad/m).
    pub fn wavenumber(&self) -> f64 {
        self.omega / self.c
    }

    /// Oscillation period `2π/ω` (s).
    pub fn period(&self) -> f64 {
        TAU / self.omega
    }
}

/// Spatial profile of a spherically symmetric source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    /// `σ(r) = ρ(r/d)/d³` with `ρ` the standard normal density.
    Gaussian,
    /// `σ(r) = sinc(r/d)/d³` for `r ≤ d`, zero beyond.
    TruncatedSinc,
    /// `σ = δ(x)`.
    Point,
    /// `σ(r) = δ(r − r₀)`.
    Shell,
}

/// A spherically symmetric source `a · σ(|x − center|) · sin(ωt + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSpec {
    /// Profile shape.
    pub kind: SourceKind,
    /// Center of symmetry.
    pub center: Vec3,
    /// Forcing amplitude `a`.
    pub amplitude: f64,
    /// `d` for Gaussian and sinc, `r₀` for the shell, ignored for a point.
    pub scale: f64,
    /// Phase shift of the time profile (rad).
    pub phase: f64,
}

impl SourceSpec {
    /// Validating constructor.
    pub fn new(kind: SourceKind, center: Vec3, amplitude: f64, scale: f64, phase: f64) -> Result<Self> {
        if kind != SourceKind::Point {
            check_positive("scale", scale)?;
        }
        if !amplitude.is_finite() {
            return Err(Error::InvalidParameter {
                name: "amplitude",
                value: amplitude,
            });
        }
        Ok(SourceSpec {
            kind,
            center,
            amplitude,
            scale,
            phase,
        })
    }

    /// Gaussian source with zero phase.
    pub fn gaussian(center: Vec3, amplitude: f64, d: f64) -> Result<Self> {
        SourceSpec::new(SourceKind::Gaussian, center, amplitude, d, 0.0)
    }

    /// Truncated-sinc source with zero phase.
    pub fn truncated_sinc(center: Vec3, amplitude: f64, d: f64) -> Result<Self> {
        SourceSpec::new(SourceKind::TruncatedSinc, center, amplitude, d, 0.0)
    }

    /// Point source with zero phase.
    pub fn point(center: Vec3, amplitude: f64) -> Result<Self> {
        SourceSpec::new(SourceKind::Point, center, amplitude, 0.0, 0.0)
    }

    /// Thin spherical shell of radius `r0` with zero phase.
    pub fn shell(center: Vec3, amplitude: f64, r0: f64) -> Result<Self> {
        SourceSpec::new(SourceKind::Shell, center, amplitude, r0, 0.0)
    }

    /// Radius outside of which the profile (and its `G(s)`) is negligible.
    ///
    /// Exact for sinc, point and shell; `8d` for the Gaussian, where the tail
    /// of `G` is below `1e-14` relative.
    pub fn effective_radius(&self) -> f64 {
        match self.kind {
            SourceKind::Gaussian => 8.0 * self.scale,
            SourceKind::TruncatedSinc | SourceKind::Shell => self.scale,
            SourceKind::Point => 0.0,
        }
    }
}

/// Masking point-force `a · δ(x − location) · sin(ωt + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointForce {
    /// Location of the force.
    pub location: Vec3,
    /// Amplitude `a_m` (unscaled).
    pub amplitude: f64,
    /// Phase shift `φ_m` (rad).
    pub phase: f64,
}

impl PointForce {
    /// Construct a point force.
    pub fn new(location: Vec3, amplitude: f64, phase: f64) -> Self {
        PointForce {
            location,
            amplitude,
            phase,
        }
    }

    /// Same force with amplitude scaled by `w`.
    pub fn scaled(self, w: f64) -> Self {
        PointForce {
            amplitude: self.amplitude * w,
            ..self
        }
    }

    /// Same force with a different phase.
    pub fn with_phase(self, phase: f64) -> Self {
        PointForce { phase, ..self }
    }
}

/// Ball `B(center, radius)` sampled on a polar half-disk grid.
///
/// Masking configurations are axially symmetric about the source-sensor line,
/// so the ball is represented by the half-disk in a plane containing that line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetRegion {
    /// Center `x_d` of the ball.
    pub center: Vec3,
    /// Radius `r_d`.
    pub radius: f64,
    /// Number of radii including the center.
    pub n_radial: usize,
    /// Number of azimuths over `[0, π]`.
    pub n_azimuthal: usize,
}

impl TargetRegion {
    /// Default polar sampling.
    pub const DEFAULT_RADIAL: usize = 61;
    /// Default azimuthal sampling.
    pub const DEFAULT_AZIMUTHAL: usize = 33;

    /// Validating constructor.
    pub fn new(center: Vec3, radius: f64, n_radial: usize, n_azimuthal: usize) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "radius",
                value: radius,
            });
        }
        if n_radial < 2 {
            return Err(Error::InvalidParameter {
                name: "n_radial",
                value: n_radial as f64,
            });
        }
        if n_azimuthal < 2 {
            return Err(Error::InvalidParameter {
                name: "n_azimuthal",
                value: n_azimuthal as f64,
            });
        }
        Ok(TargetRegion {
            center,
            radius,
            n_radial,
            n_azimuthal,
        })
    }

    /// Region with default sampling.
    pub fn with_default_sampling(center: Vec3, radius: f64) -> Result<Self> {
        TargetRegion::new(center, radius, Self::DEFAULT_RADIAL, Self::DEFAULT_AZIMUTHAL)
    }

    /// Sample points of the half-disk in the plane spanned by the axis
    /// `center − axis_origin` and a perpendicular direction. The center of
    /// the ball appears exactly once.
    pub fn half_disk_points(&self, axis_origin: Vec3) -> Result<Vec<Vec3>> {
        let (e1, e2) = local_frame(axis_origin, self.center)?;
        let mut pts = Vec::with_capacity(1 + (self.n_radial - 1) * self.n_azimuthal);
        pts.push(self.center);
        for i in 1..self.n_radial {
            let rho = self.radius * i as f64 / (self.n_radial - 1) as f64;
            for j in 0..self.n_azimuthal {
                let phi = PI * j as f64 / (self.n_azimuthal - 1) as f64;
                let (s, c) = libm::sincos(phi);
                pts.push(self.center + e1 * (rho * c) + e2 * (rho * s));
            }
        }
        Ok(pts)
    }
}

/// Orthonormal in-plane frame at `target`: `e1` points away from `origin`,
/// `e2` is perpendicular to it.
pub fn local_frame(origin: Vec3, target: Vec3) -> Result<(Vec3, Vec3)> {
    let e1 = (target - origin)
        .normalized()
        .ok_or(Error::Geometry("sensor coincides with the source center"))?;
    Ok((e1, e1.any_perpendicular()))
}
