//! Masking designs for a Gaussian source: a concentric shell, one point force,
//! or a weighted pair of point forces on the source-sensor axis.
//!
//! Amplitudes exposed here are always the unscaled forcing amplitudes `a`.
//! The far-field amplitudes are `ã_s = a_s·e^{−2π²d²/λ²}/(2c²)` for the
//! source and `ã_m = a_m/(4πc²)` for a point force.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::analytic::{
    gaussian_source_phasor, guarded_distance, point_force_phasor, qss_coeff, qss_coeff_gaussian, qss_coeff_point,
    RHO_MIN,
};
use crate::error::{Error, Result};
use crate::geometry::{distance_difference, Vec3};
use crate::phasor::{wrap_phase, Phasor};
use crate::types::{Medium, PointForce, SourceKind, SourceSpec};

/// Relative slack on the exclusion-ball test, so a force placed exactly on
/// the sphere `|x_m − x_s| = ε_s` is accepted despite rounding.
const PLACEMENT_SLACK: f64 = 1e-12;

fn require_gaussian(source: &SourceSpec) -> Result<()> {
    if source.kind == SourceKind::Gaussian {
        Ok(())
    } else {
        Err(Error::UnsupportedSource("masking designs need a Gaussian source"))
    }
}

/// Far-field amplitude `ã_s` of a Gaussian source.
pub fn scaled_source_amplitude(source: &SourceSpec, m: &Medium) -> f64 {
    source.amplitude * qss_coeff_gaussian(source.scale, m)
}

/// `ã_m = a_m/(4πc²)`.
pub fn scaled_force_amplitude(a_m: f64, m: &Medium) -> f64 {
    a_m * qss_coeff_point(m)
}

/// `a_m = 4πc²·ã_m`.
pub fn unscaled_force_amplitude(scaled: f64, m: &Medium) -> f64 {
    scaled / qss_coeff_point(m)
}

/// Concentric shell of radius `r₀ = λ(2k+1)/4` whose field cancels the
/// source field everywhere outside `r₀`.
pub fn shell_mask(source: &SourceSpec, k: u32, m: &Medium) -> Result<SourceSpec> {
    require_gaussian(source)?;
    if k == 0 {
        return Err(Error::InvalidParameter { name: "k", value: 0.0 });
    }
    let lambda = m.wavelength();
    let r0 = lambda * (2 * k + 1) as f64 / 4.0;
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    let kd = m.wavenumber() * source.scale;
    let a_m = sign * source.amplitude * PI / (r0 * lambda) * libm::exp(-0.5 * kd * kd);
    SourceSpec::new(SourceKind::Shell, source.center, a_m, r0, source.phase)
}

/// Far-field coefficient of several concentric sources with a common phase.
pub fn combined_coefficient(sources: &[SourceSpec], m: &Medium) -> f64 {
    sources
        .iter()
        .map(|s| s.amplitude * qss_coeff(s.kind, s.scale, m))
        .sum()
}

fn check_placement(source: &SourceSpec, location: Vec3, exclusion_radius: f64) -> Result<()> {
    let distance = location.distance(source.center);
    if distance < exclusion_radius * (1.0 - PLACEMENT_SLACK) {
        Err(Error::ForcePlacement {
            distance,
            exclusion_radius,
        })
    } else {
        Ok(())
    }
}

/// Point force at `location` that cancels the source exactly at `sensor`.
///
/// `φ_m = φ_s + π + k(|x_d − x_m| − |x_d|)`, `ã_m = ã_s|x_d − x_m|/|x_d|`,
/// with distances measured from the source center. The phase is reported in
/// `(−π, π]`.
pub fn one_force_mask(
    source: &SourceSpec,
    sensor: Vec3,
    location: Vec3,
    exclusion_radius: f64,
    m: &Medium,
) -> Result<PointForce> {
    require_gaussian(source)?;
    check_placement(source, location, exclusion_radius)?;
    let r_d = sensor.distance(source.center);
    let r_dm = sensor.distance(location);
    if r_d == 0.0 {
        return Err(Error::Geometry("sensor coincides with the source center"));
    }
    if r_dm == 0.0 {
        return Err(Error::Geometry("force coincides with the sensor"));
    }
    let scaled = scaled_source_amplitude(source, m) * r_dm / r_d;
    let delta = distance_difference(sensor, location, source.center, r_dm, r_d);
    let phase = wrap_phase(source.phase + PI + m.wavenumber() * delta);
    Ok(PointForce::new(location, unscaled_force_amplitude(scaled, m), phase))
}

/// Which side of the source the force sits on, along the source-sensor axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisSide {
    /// Between source and sensor, `β = +ε_s/|x_d|`.
    TowardSensor,
    /// Behind the source, `β = −ε_s/|x_d|`.
    AwayFromSensor,
}

impl AxisSide {
    /// `+1` or `−1`.
    pub fn sign(self) -> f64 {
        match self {
            AxisSide::TowardSensor => 1.0,
            AxisSide::AwayFromSensor => -1.0,
        }
    }
}

fn axis_beta(source: &SourceSpec, sensor: Vec3, eps_s: f64, side: AxisSide) -> Result<f64> {
    let r_d = sensor.distance(source.center);
    if !(eps_s >= 0.0) || eps_s >= r_d {
        return Err(Error::Geometry("exclusion ball must not reach the sensor"));
    }
    Ok(side.sign() * eps_s / r_d)
}

/// Single force on the exclusion sphere along the source-sensor axis.
///
/// Besides cancelling the field at `sensor`, this placement removes the
/// leading term of the field gradient there.
pub fn optimal_one_force(
    source: &SourceSpec,
    sensor: Vec3,
    eps_s: f64,
    side: AxisSide,
    m: &Medium,
) -> Result<PointForce> {
    let beta = axis_beta(source, sensor, eps_s, side)?;
    let location = source.center + (sensor - source.center) * beta;
    one_force_mask(source, sensor, location, eps_s, m)
}

/// Two forces on opposite sides of the source with weights `γ` and `1 − γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoForceDesign {
    /// Unweighted force at `+ε_s x̂_d`.
    pub force1: PointForce,
    /// Unweighted force at `−ε_s x̂_d`.
    pub force2: PointForce,
    /// `β_s = ε_s/|x_d|`.
    pub beta_s: f64,
    /// Weight `γ = (1 − β_s)/2` of force 1.
    pub gamma: f64,
}

impl TwoForceDesign {
    /// Forces with their weights applied.
    pub fn weighted_forces(&self) -> [PointForce; 2] {
        [self.force1.scaled(self.gamma), self.force2.scaled(1.0 - self.gamma)]
    }
}

/// Weighted pair of axis forces; the total field and its gradient both
/// vanish at `sensor`.
pub fn optimal_two_force(source: &SourceSpec, sensor: Vec3, eps_s: f64, m: &Medium) -> Result<TwoForceDesign> {
    let beta_s = axis_beta(source, sensor, eps_s, AxisSide::TowardSensor)?;
    Ok(TwoForceDesign {
        force1: optimal_one_force(source, sensor, eps_s, AxisSide::TowardSensor, m)?,
        force2: optimal_one_force(source, sensor, eps_s, AxisSide::AwayFromSensor, m)?,
        beta_s,
        gamma: 0.5 * (1.0 - beta_s),
    })
}

/// A Gaussian source with point forces, an exclusion ball and a sensor.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskingConfig {
    source: SourceSpec,
    forces: Vec<PointForce>,
    exclusion_radius: f64,
    sensor: Vec3,
}

impl MaskingConfig {
    /// Validate and build a configuration.
    ///
    /// Every force must lie outside the exclusion ball; with exactly two
    /// forces both must lie on the source-sensor line.
    pub fn new(source: SourceSpec, forces: Vec<PointForce>, exclusion_radius: f64, sensor: Vec3) -> Result<Self> {
        require_gaussian(&source)?;
        if !(exclusion_radius >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "exclusion_radius",
                value: exclusion_radius,
            });
        }
        for f in &forces {
            check_placement(&source, f.location, exclusion_radius)?;
        }
        if forces.len() == 2 {
            let axis = (sensor - source.center)
                .normalized()
                .ok_or(Error::Geometry("sensor coincides with the source center"))?;
            for f in &forces {
                let rel = f.location - source.center;
                if rel.cross(axis).norm() > 1e-9 * rel.norm().max(1.0) {
                    return Err(Error::Geometry(
                        "two-force locations must lie on the source-sensor line",
                    ));
                }
            }
        }
        Ok(MaskingConfig {
            source,
            forces,
            exclusion_radius,
            sensor,
        })
    }

    /// Unmasked source.
    pub fn unmasked(source: SourceSpec, sensor: Vec3) -> Result<Self> {
        MaskingConfig::new(source, Vec::new(), 0.0, sensor)
    }

    /// Source with the optimal single force toward the sensor.
    pub fn one_force(source: SourceSpec, sensor: Vec3, eps_s: f64, m: &Medium) -> Result<Self> {
        let f = optimal_one_force(&source, sensor, eps_s, AxisSide::TowardSensor, m)?;
        MaskingConfig::new(source, alloc::vec![f], eps_s, sensor)
    }

    /// Source with the weighted optimal pair of forces.
    pub fn two_force(source: SourceSpec, sensor: Vec3, eps_s: f64, m: &Medium) -> Result<Self> {
        let d = optimal_two_force(&source, sensor, eps_s, m)?;
        MaskingConfig::new(source, d.weighted_forces().to_vec(), eps_s, sensor)
    }

    /// The source.
    pub fn source(&self) -> &SourceSpec {
        &self.source
    }

    /// The masking forces.
    pub fn forces(&self) -> &[PointForce] {
        &self.forces
    }

    /// Exclusion radius `ε_s`.
    pub fn exclusion_radius(&self) -> f64 {
        self.exclusion_radius
    }

    /// Sensor center `x_d`.
    pub fn sensor(&self) -> Vec3 {
        self.sensor
    }

    /// Same configuration with the force phases replaced.
    pub fn with_phases(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.forces.len() {
            return Err(Error::DimensionMismatch {
                expected: self.forces.len(),
                found: phases.len(),
            });
        }
        let forces = self.forces.iter().zip(phases).map(|(f, &p)| f.with_phase(p)).collect();
        Ok(MaskingConfig { forces, ..self.clone() })
    }

    /// Source phasor at `x`.
    pub fn source_phasor(&self, x: Vec3, m: &Medium) -> Result<Phasor> {
        gaussian_source_phasor(&self.source, x, m)
    }

    /// `U_total/U_source` at `x`, or `None` for a silent source.
    ///
    /// Each force enters as `(ã_m/ã_s)(r/ρ)e^{i(φ_m − φ_s − k(ρ − r))}` with
    /// `ρ − r` formed without cancellation, so the ratio keeps full relative
    /// accuracy where the masked field nearly vanishes.
    pub fn relative_phasor(&self, x: Vec3, m: &Medium) -> Result<Option<Phasor>> {
        let a_s = scaled_source_amplitude(&self.source, m);
        let r = guarded_distance(x, self.source.center, RHO_MIN)?;
        if a_s == 0.0 {
            for f in &self.forces {
                guarded_distance(x, f.location, RHO_MIN)?;
            }
            return Ok(None);
        }
        let k = m.wavenumber();
        let mut ratio = Phasor::new(1.0, 0.0);
        for f in &self.forces {
            let rho = guarded_distance(x, f.location, RHO_MIN)?;
            let delta = distance_difference(x, f.location, self.source.center, rho, r);
            let amp = scaled_force_amplitude(f.amplitude, m) / a_s * (r / rho);
            ratio += Phasor::from_sinusoid(amp, f.phase - self.source.phase - k * delta);
        }
        Ok(Some(ratio))
    }

    /// Total phasor (source plus forces) at `x`.
    pub fn total_phasor(&self, x: Vec3, m: &Medium) -> Result<Phasor> {
        match self.relative_phasor(x, m)? {
            Some(ratio) => Ok(self.source_phasor(x, m)?.mul_phasor(ratio)),
            None => self
                .forces
                .iter()
                .map(|f| point_force_phasor(f, x, m))
                .sum::<Result<Phasor>>(),
        }
    }

    /// Normalized residual amplitude `|U_total|/|U_source|` at `x`.
    pub fn normalized_residual(&self, x: Vec3, m: &Medium) -> Result<f64> {
        self.relative_phasor(x, m)?
            .map(Phasor::amplitude)
            .ok_or(Error::UndefinedMetric)
    }
}

/// `ε_d/|x_d| · |β|/(1 − β)`: bound on the one-force residual within
/// `B(x_d, ε_d)` when terms of second order in `ε_d/|x_d|` are neglected.
pub fn one_force_residual_bound(eps_d: f64, r_d: f64, beta: f64) -> f64 {
    eps_d / r_d * beta.abs() / (1.0 - beta)
}
