//! JSON scenario configuration.
//!
//! Every section and key is optional; omitted values take the reference
//! scenario defaults (water, 100 Hz, sensor 750 m down the x axis). Unknown
//! keys are rejected.

use std::path::Path;

use acmask_core::region::OptimizerSettings;
use acmask_core::{Medium, SourceSpec, TargetRegion, Vec3};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Wave speed and driving frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MediumConfig {
    /// Wave speed (m/s).
    pub c: f64,
    /// Driving frequency (Hz).
    pub frequency: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        MediumConfig {
            c: 1500.0,
            frequency: 100.0,
        }
    }
}

/// Gaussian source at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SourceConfig {
    /// Forcing amplitude `a_s`.
    pub a_s: f64,
    /// Gaussian scale `d` (m).
    pub d: f64,
}

impl Default for SourceConfig {
    fn default() -> Self {
        SourceConfig { a_s: 1.0, d: 1.0 }
    }
}

/// Sensor location and the two radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    /// Sensor center `x_d` (m).
    pub x_d: [f64; 3],
    /// Exclusion radius around the source (m).
    pub epsilon_s: f64,
    /// Sensor-region radius (m).
    pub epsilon_d: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            x_d: [750.0, 0.0, 0.0],
            epsilon_s: 15.0,
            epsilon_d: 15.0,
        }
    }
}

/// Polar half-disk sampling of target balls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingConfig {
    /// Radii per ball, including the center.
    pub n_radial: usize,
    /// Azimuths over `[0, π]`.
    pub n_azimuthal: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            n_radial: TargetRegion::DEFAULT_RADIAL,
            n_azimuthal: TargetRegion::DEFAULT_AZIMUTHAL,
        }
    }
}

/// Phase optimizer settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizerConfig {
    /// Perturbed starts around the analytic phases.
    pub perturbed_starts: usize,
    /// Perturbation size and initial simplex edge (rad).
    pub perturbation: f64,
    /// Iteration cap per simplex run.
    pub max_iters: usize,
    /// Objective-spread tolerance.
    pub f_tol: f64,
    /// Simplex-size tolerance (rad).
    pub x_tol: f64,
    /// Restarts from the best vertex.
    pub max_restarts: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        let s = OptimizerSettings::default();
        OptimizerConfig {
            perturbed_starts: s.perturbed_starts,
            perturbation: s.perturbation,
            max_iters: s.max_iters,
            f_tol: s.f_tol,
            x_tol: s.x_tol,
            max_restarts: s.max_restarts,
        }
    }
}

/// Full scenario configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// Medium.
    pub medium: MediumConfig,
    /// Source.
    pub source: SourceConfig,
    /// Geometry.
    pub geometry: GeometryConfig,
    /// Target-ball sampling.
    pub sampling: SamplingConfig,
    /// Phase optimizer.
    pub optimizer: OptimizerConfig,
    /// Target-ball radii for improvement curves (m, ascending).
    pub radii: Vec<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            medium: MediumConfig::default(),
            source: SourceConfig::default(),
            geometry: GeometryConfig::default(),
            sampling: SamplingConfig::default(),
            optimizer: OptimizerConfig::default(),
            radii: vec![
                0.5, 1.0, 2.0, 3.0, 5.0, 7.5, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0, 60.0, 75.0,
            ],
        }
    }
}

impl ScenarioConfig {
    /// Parse a JSON document.
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Read and parse a config file; `None` gives the defaults.
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(ScenarioConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                ScenarioConfig::from_json(&text)
            }
        }
    }

    fn validate(&self) -> CliResult<()> {
        self.medium()?;
        self.source()?;
        let g = &self.geometry;
        if !(g.epsilon_d >= 0.0) || !(g.epsilon_s >= 0.0) {
            return Err(CliError::Usage("geometry radii must be non-negative".into()));
        }
        if self.sensor().norm() <= g.epsilon_s {
            return Err(CliError::Usage("x_d must lie outside the exclusion ball".into()));
        }
        if self.sampling.n_radial < 2 || self.sampling.n_azimuthal < 2 {
            return Err(CliError::Usage("sampling counts must be at least 2".into()));
        }
        if self.radii.windows(2).any(|w| !(w[1] > w[0])) || self.radii.iter().any(|&r| !(r > 0.0)) {
            return Err(CliError::Usage("radii must be positive and strictly ascending".into()));
        }
        Ok(())
    }

    /// Medium.
    pub fn medium(&self) -> CliResult<Medium> {
        Ok(Medium::from_frequency(self.medium.c, self.medium.frequency)?)
    }

    /// Gaussian source at the origin.
    pub fn source(&self) -> CliResult<SourceSpec> {
        Ok(SourceSpec::gaussian(Vec3::ZERO, self.source.a_s, self.source.d)?)
    }

    /// Sensor center.
    pub fn sensor(&self) -> Vec3 {
        Vec3::from(self.geometry.x_d)
    }

    /// Optimizer settings.
    pub fn optimizer_settings(&self) -> OptimizerSettings {
        let o = &self.optimizer;
        OptimizerSettings {
            perturbed_starts: o.perturbed_starts,
            perturbation: o.perturbation,
            max_iters: o.max_iters,
            f_tol: o.f_tol,
            x_tol: o.x_tol,
            max_restarts: o.max_restarts,
        }
    }
}
