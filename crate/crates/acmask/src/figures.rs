//! Data behind each reproducible figure, as tables.

use std::f64::consts::PI;

use acmask_core::masking::{optimal_one_force, AxisSide, MaskingConfig};
use acmask_core::region::{improvement_curve, ImprovementRow, OptimizationProblem};
use acmask_core::types::local_frame;
use acmask_core::{Medium, TargetRegion, Vec3};
use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Names accepted by `reproduce`.
pub const FIGURES: [&str; 7] = ["fig03", "fig04", "fig05", "fig06", "fig07", "fig08", "fig09"];

/// Fixed sampling choices of the figure tables.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureOptions {
    /// Periods shown in the time traces.
    pub trace_periods: usize,
    /// Samples per period in the time traces.
    pub samples_per_period: usize,
    /// Points per ray, log-spaced.
    pub ray_points: usize,
    /// Smallest ray distance (m).
    pub ray_r_min: f64,
    /// Semicircle radii (m).
    pub semicircle_radii: Vec<f64>,
    /// Points per semicircle.
    pub semicircle_points: usize,
    /// Grid points per side of the contour grids.
    pub grid_points: usize,
    /// Target radius of the large-region comparison (m).
    pub large_region_radius: f64,
}

impl Default for FigureOptions {
    fn default() -> Self {
        FigureOptions {
            trace_periods: 3,
            samples_per_period: 100,
            ray_points: 101,
            ray_r_min: 0.01,
            semicircle_radii: vec![1.0, 2.0, 4.0, 8.0, 15.0],
            semicircle_points: 181,
            grid_points: 121,
            large_region_radius: 75.0,
        }
    }
}

/// Resolved physical scenario with the three axis designs.
#[derive(Debug, Clone)]
pub struct Scenario {
    /// Medium.
    pub medium: Medium,
    /// Sensor center `x_d`.
    pub sensor: Vec3,
    /// Sensor-region radius.
    pub eps_d: f64,
    /// Source alone.
    pub unmasked: MaskingConfig,
    /// Source with force 1 (between source and sensor).
    pub force1: MaskingConfig,
    /// Source with force 2 (behind the source).
    pub force2: MaskingConfig,
    /// Source with the weighted pair.
    pub two: MaskingConfig,
    /// In-plane frame at the sensor: `e1` along `x_d`, `e2` perpendicular.
    pub frame: (Vec3, Vec3),
}

impl Scenario {
    /// Build the designs for a config.
    pub fn new(cfg: &ScenarioConfig) -> CliResult<Self> {
        let m = cfg.medium()?;
        let s = cfg.source()?;
        let x_d = cfg.sensor();
        let eps_s = cfg.geometry.epsilon_s;
        let f2 = optimal_one_force(&s, x_d, eps_s, AxisSide::AwayFromSensor, &m)?;
        Ok(Scenario {
            unmasked: MaskingConfig::unmasked(s, x_d)?,
            force1: MaskingConfig::one_force(s, x_d, eps_s, &m)?,
            force2: MaskingConfig::new(s, vec![f2], eps_s, x_d)?,
            two: MaskingConfig::two_force(s, x_d, eps_s, &m)?,
            frame: local_frame(s.center, x_d)?,
            medium: m,
            sensor: x_d,
            eps_d: cfg.geometry.epsilon_d,
        })
    }

    /// Point `x_d + a·e1 + b·e2`.
    pub fn local_point(&self, a: f64, b: f64) -> Vec3 {
        self.sensor + self.frame.0 * a + self.frame.1 * b
    }
}

/// Figure table by name.
pub fn reproduce(name: &str, cfg: &ScenarioConfig, opts: &FigureOptions) -> CliResult<Table> {
    match name {
        "fig03" => fig03(cfg, opts),
        "fig04" => fig04(cfg, opts),
        "fig05" => fig05(cfg, opts),
        "fig06" => fig06(cfg, opts),
        "fig07" => fig07(cfg),
        "fig08" => fig08(cfg),
        "fig09" => fig09(cfg, opts),
        _ => Err(CliError::Usage(format!(
            "unknown figure '{name}'; expected one of {}",
            FIGURES.join(", ")
        ))),
    }
}

/// Time traces at `x_d + ε_d x̂_d` for the source alone and the three designs.
pub fn fig03(cfg: &ScenarioConfig, opts: &FigureOptions) -> CliResult<Table> {
    let sc = Scenario::new(cfg)?;
    let m = &sc.medium;
    let x = sc.local_point(sc.eps_d, 0.0);
    let designs = [&sc.unmasked, &sc.force1, &sc.force2, &sc.two];
    let phasors = designs
        .iter()
        .map(|d| d.total_phasor(x, m))
        .collect::<acmask_core::Result<Vec<_>>>()?;
    // Start on a whole period after the start-up wave from the source core has passed.
    let period = m.period();
    let arrival = (x.norm() + 8.0 * cfg.source.d) / m.c();
    let t0 = (arrival / period).ceil() * period;
    let n = opts.trace_periods * opts.samples_per_period;
    let mut t = Table::new(&["t_s", "u_source", "u_f1", "u_f2", "u_weighted"]);
    for i in 0..=n {
        let ts = t0 + period * i as f64 / opts.samples_per_period as f64;
        let mut row = vec![Cell::Num(ts)];
        row.extend(phasors.iter().map(|p| Cell::Num(p.value_at(m.omega(), ts))));
        t.push(row);
    }
    Ok(t)
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![hi];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `A^NR` along rays from `x_d` at `φ = 0, π/2, π`.
pub fn fig04(cfg: &ScenarioConfig, opts: &FigureOptions) -> CliResult<Table> {
    let sc = Scenario::new(cfg)?;
    let m = &sc.medium;
    let mut t = Table::new(&["phi_label", "r_m", "A_NR_one_force", "A_NR_two_force"]);
    if !(sc.eps_d > opts.ray_r_min) {
        return Err(CliError::Usage(
            "epsilon_d must exceed the smallest ray distance".into(),
        ));
    }
    for (label, phi) in [("0", 0.0), ("pi/2", 0.5 * PI), ("pi", PI)] {
        let (s, c) = phi.sin_cos();
        for r in log_spaced(opts.ray_r_min, sc.eps_d, opts.ray_points) {
            let x = sc.local_point(r * c, r * s);
            t.push(vec![
                label.into(),
                r.into(),
                sc.force1.normalized_residual(x, m)?.into(),
                sc.two.normalized_residual(x, m)?.into(),
            ]);
        }
    }
    Ok(t)
}

/// `A^NR` on semicircles around `x_d`.
pub fn fig05(cfg: &ScenarioConfig, opts: &FigureOptions) -> CliResult<Table> {
    let sc = Scenario::new(cfg)?;
    let m = &sc.medium;
    let n = opts.semicircle_points.max(2);
    let mut t = Table::new(&["r_m", "phi_rad", "A_NR_one", "A_NR_two"]);
    for &r in &opts.semicircle_radii {
        for j in 0..n {
            let phi = PI * j as f64 / (n - 1) as f64;
            let (s, c) = phi.sin_cos();
            let x = sc.local_point(r * c, r * s);
            t.push(vec![
                r.into(),
                phi.into(),
                sc.force1.normalized_residual(x, m)?.into(),
                sc.two.normalized_residual(x, m)?.into(),
            ]);
        }
    }
    Ok(t)
}

fn contour_panels(
    t: &mut Table,
    sc: &Scenario,
    half: f64,
    n: usize,
    panels: &[(&str, &MaskingConfig)],
) -> CliResult<()> {
    let n = n.max(2);
    for (label, design) in panels {
        for i in 0..n {
            let y = -half + 2.0 * half * i as f64 / (n - 1) as f64;
            for j in 0..n {
                let x = -half + 2.0 * half * j as f64 / (n - 1) as f64;
                let a = design.normalized_residual(sc.local_point(x, y), &sc.medium)?;
                t.push(vec![
                    (*label).into(),
                    x.into(),
                    y.into(),
                    a.max(f64::MIN_POSITIVE).log10().into(),
                ]);
            }
        }
    }
    Ok(())
}

/// `log₁₀ A^NR` on a square grid of half-width `ε_d` for both axis designs.
pub fn fig06(cfg: &ScenarioConfig, opts: &FigureOptions) -> CliResult<Table> {
    let sc = Scenario::new(cfg)?;
    let mut t = Table::new(&["panel", "x_m", "y_m", "log10_A_NR"]);
    contour_panels(
        &mut t,
        &sc,
        sc.eps_d,
        opts.grid_points,
        &[("one_force", &sc.force1), ("two_force", &sc.two)],
    )?;
    Ok(t)
}

/// Analytic-phase vs optimized-phase improvement curve over the config radii.
pub fn improvement_rows(cfg: &ScenarioConfig) -> CliResult<Vec<ImprovementRow>> {
    let sc = Scenario::new(cfg)?;
    Ok(improvement_curve(
        &sc.two,
        &cfg.radii,
        cfg.sampling.n_radial,
        cfg.sampling.n_azimuthal,
        cfg.optimizer_settings(),
        &sc.medium,
    )?)
}

/// `E_max` with analytic and optimized phases per target radius.
pub fn fig07(cfg: &ScenarioConfig) -> CliResult<Table> {
    let mut t = Table::new(&["r_d_m", "E_opt0", "E_optrd", "ratio"]);
    for r in improvement_rows(cfg)? {
        t.push(vec![r.r_d.into(), r.e_analytic.into(), r.e_opt.into(), r.ratio.into()]);
    }
    Ok(t)
}

/// Optimal minus analytic phases per target radius.
pub fn fig08(cfg: &ScenarioConfig) -> CliResult<Table> {
    let mut t = Table::new(&["r_d_m", "dphi1_rad", "dphi2_rad"]);
    for r in improvement_rows(cfg)? {
        t.push(vec![r.r_d.into(), r.deviations[0].into(), r.deviations[1].into()]);
    }
    Ok(t)
}

/// Weighted pair with phases optimized for a ball of radius `r_d`.
pub fn optimized_two_force(cfg: &ScenarioConfig, sc: &Scenario, r_d: f64) -> CliResult<MaskingConfig> {
    let region = TargetRegion::new(sc.sensor, r_d, cfg.sampling.n_radial, cfg.sampling.n_azimuthal)?;
    let opt = OptimizationProblem::new(&sc.two, region, cfg.optimizer_settings(), &sc.medium)?.optimize();
    Ok(sc.two.with_phases(&opt.phases)?)
}

/// `log₁₀ A^NR` over the large region for analytic and optimized phases.
pub fn fig09(cfg: &ScenarioConfig, opts: &FigureOptions) -> CliResult<Table> {
    let sc = Scenario::new(cfg)?;
    let r_d = opts.large_region_radius;
    let optimized = optimized_two_force(cfg, &sc, r_d)?;
    let mut t = Table::new(&["panel", "x_m", "y_m", "log10_A_NR"]);
    contour_panels(
        &mut t,
        &sc,
        r_d,
        opts.grid_points,
        &[("analytic", &sc.two), ("optimized", &optimized)],
    )?;
    Ok(t)
}
