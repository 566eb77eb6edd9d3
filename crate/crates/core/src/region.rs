//! Min-max tuning of the two force phases over a target ball.
//!
//! The objective is `E_max(φ₁, φ₂) = max A^NR` over the polar half-disk
//! sample of `B(x_d, r_d)`. Only the phases move; locations and amplitudes
//! stay at the two-force design values.

use alloc::vec::Vec;

use crate::analytic::{guarded_distance, RHO_MIN};
use crate::error::{Error, Result};
use crate::geometry::distance_difference;
use crate::masking::{scaled_force_amplitude, scaled_source_amplitude, MaskingConfig};
use crate::phasor::{wrap_phase, Phasor};
use crate::simplex::{nelder_mead, SimplexSettings};
use crate::types::{Medium, TargetRegion};

/// Multi-start simplex settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    /// Number of perturbed starts around the analytic phases, spread evenly
    /// in direction.
    pub perturbed_starts: usize,
    /// Size of the perturbation (rad); also the initial simplex edge.
    pub perturbation: f64,
    /// Iteration cap per simplex run.
    pub max_iters: usize,
    /// Objective-spread tolerance.
    pub f_tol: f64,
    /// Simplex-size tolerance (rad).
    pub x_tol: f64,
    /// Maximum restarts from the best vertex after a run stops.
    pub max_restarts: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            perturbed_starts: 8,
            perturbation: 0.05,
            max_iters: 500,
            f_tol: 1e-12,
            x_tol: 1e-12,
            max_restarts: 5,
        }
    }
}

/// Precomputed phase-optimization problem for a two-force configuration.
#[derive(Debug, Clone)]
pub struct OptimizationProblem {
    region: TargetRegion,
    settings: OptimizerSettings,
    analytic_phases: [f64; 2],
    // Per sample: the unit-phase contribution of each force relative to the
    // source phasor, so that A^NR = |1 + e^{iφ₁}g₁ + e^{iφ₂}g₂|.
    unit_fields: Vec<[Phasor; 2]>,
}

impl OptimizationProblem {
    /// Build the problem; `config` must carry exactly two forces.
    pub fn new(config: &MaskingConfig, region: TargetRegion, settings: OptimizerSettings, m: &Medium) -> Result<Self> {
        let forces = config.forces();
        if forces.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: forces.len(),
            });
        }
        let source = config.source();
        let a_s = scaled_source_amplitude(source, m);
        if a_s == 0.0 {
            return Err(Error::UndefinedMetric);
        }
        let k = m.wavenumber();
        let pts = region.half_disk_points(source.center)?;
        let mut unit_fields = Vec::with_capacity(pts.len());
        for x in pts {
            let r = guarded_distance(x, source.center, RHO_MIN)?;
            let mut g = [Phasor::ZERO; 2];
            for (gj, f) in g.iter_mut().zip(forces) {
                let rho = guarded_distance(x, f.location, RHO_MIN)?;
                let delta = distance_difference(x, f.location, source.center, rho, r);
                let amp = scaled_force_amplitude(f.amplitude, m) / a_s * (r / rho);
                *gj = Phasor::from_sinusoid(amp, -source.phase - k * delta);
            }
            unit_fields.push(g);
        }
        Ok(OptimizationProblem {
            region,
            settings,
            analytic_phases: [forces[0].phase, forces[1].phase],
            unit_fields,
        })
    }

    /// Target region.
    pub fn region(&self) -> &TargetRegion {
        &self.region
    }

    /// Phases of the two-force design.
    pub fn analytic_phases(&self) -> [f64; 2] {
        self.analytic_phases
    }

    /// Number of sample points.
    pub fn sample_count(&self) -> usize {
        self.unit_fields.len()
    }

    /// `E_max(φ₁, φ₂)`.
    pub fn e_max(&self, phi1: f64, phi2: f64) -> f64 {
        let r1 = Phasor::from_sinusoid(1.0, phi1);
        let r2 = Phasor::from_sinusoid(1.0, phi2);
        self.unit_fields
            .iter()
            .map(|[g1, g2]| (Phasor::new(1.0, 0.0) + g1.mul_phasor(r1) + g2.mul_phasor(r2)).amplitude())
            .fold(0.0, f64::max)
    }

    fn starts(&self) -> Vec<[f64; 2]> {
        let [p1, p2] = self.analytic_phases;
        let n = self.settings.perturbed_starts;
        let mut starts = Vec::with_capacity(n + 1);
        starts.push([p1, p2]);
        for j in 0..n {
            let (s, c) = libm::sincos(core::f64::consts::TAU * j as f64 / n as f64);
            starts.push([p1 + self.settings.perturbation * c, p2 + self.settings.perturbation * s]);
        }
        starts
    }

    /// Minimize `E_max` over the phases.
    ///
    /// The result is never worse than the analytic phases, which are one of
    /// the starts.
    pub fn optimize(&self) -> PhaseOptimum {
        let s = &self.settings;
        let simplex = SimplexSettings {
            max_iters: s.max_iters,
            f_tol: s.f_tol,
            x_tol: s.x_tol,
            initial_step: s.perturbation,
        };
        let objective = |p: &[f64; 2]| self.e_max(p[0], p[1]);
        let e_analytic = objective(&self.analytic_phases);
        let mut best = (self.analytic_phases, e_analytic);
        let mut iterations = 0;
        let mut converged = true;
        for start in self.starts() {
            let mut run = nelder_mead(objective, start, &simplex);
            iterations += run.iterations;
            for _ in 0..s.max_restarts {
                let again = nelder_mead(objective, run.x, &simplex);
                iterations += again.iterations;
                let improved = again.f < run.f - s.f_tol;
                if again.f < run.f {
                    run = again;
                }
                if !improved {
                    break;
                }
            }
            converged &= run.converged;
            if run.f < best.1 {
                best = (run.x, run.f);
            }
        }
        let [a1, a2] = self.analytic_phases;
        let d1 = wrap_phase(best.0[0] - a1);
        let d2 = wrap_phase(best.0[1] - a2);
        PhaseOptimum {
            phases: [wrap_phase(a1 + d1), wrap_phase(a2 + d2)],
            deviations: [d1, d2],
            e_opt: best.1,
            e_analytic,
            iterations,
            converged,
        }
    }
}

/// Result of [`OptimizationProblem::optimize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseOptimum {
    /// Optimal phases in `(−π, π]`.
    pub phases: [f64; 2],
    /// Optimal minus analytic phases, in `(−π, π]`.
    pub deviations: [f64; 2],
    /// `E_max` at the optimal phases.
    pub e_opt: f64,
    /// `E_max` at the analytic phases.
    pub e_analytic: f64,
    /// Total simplex iterations over all starts.
    pub iterations: usize,
    /// Whether every run met a tolerance before its iteration cap.
    pub converged: bool,
}

impl PhaseOptimum {
    /// `E_analytic / E_opt`.
    pub fn improvement(&self) -> f64 {
        self.e_analytic / self.e_opt
    }
}

/// One row of an improvement curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementRow {
    /// Region radius.
    pub r_d: f64,
    /// `E_max` with the analytic phases.
    pub e_analytic: f64,
    /// `E_max` with optimized phases.
    pub e_opt: f64,
    /// `e_analytic / e_opt`.
    pub ratio: f64,
    /// Phase deviations of the optimum (rad).
    pub deviations: [f64; 2],
    /// Whether the optimizer met its tolerance.
    pub converged: bool,
}

/// Optimize the phases for each radius in `radii` (positive, ascending),
/// sampling each ball with `n_radial × n_azimuthal` points.
pub fn improvement_curve(
    config: &MaskingConfig,
    radii: &[f64],
    n_radial: usize,
    n_azimuthal: usize,
    settings: OptimizerSettings,
    m: &Medium,
) -> Result<Vec<ImprovementRow>> {
    let mut prev = 0.0;
    for &r in radii {
        if !(r > prev) {
            return Err(Error::InvalidParameter { name: "r_d", value: r });
        }
        prev = r;
    }
    radii
        .iter()
        .map(|&r_d| {
            let region = TargetRegion::new(config.sensor(), r_d, n_radial, n_azimuthal)?;
            let opt = OptimizationProblem::new(config, region, settings, m)?.optimize();
            Ok(ImprovementRow {
                r_d,
                e_analytic: opt.e_analytic,
                e_opt: opt.e_opt,
                ratio: opt.improvement(),
                deviations: opt.deviations,
                converged: opt.converged,
            })
        })
        .collect()
}
