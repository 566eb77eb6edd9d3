//! Command-line interface.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use acmask_core::analytic::{exact_field_sinc, qss_coeff_gaussian, qss_field, source_phasor};
use acmask_core::kernel::{fit_coefficients, KernelBasis, KernelShape, DEFAULT_RIDGE};
use acmask_core::masking::{
    combined_coefficient, optimal_one_force, optimal_two_force, scaled_force_amplitude, scaled_source_amplitude,
    shell_mask, AxisSide,
};
use acmask_core::oracle::{build_g_spline, compute_u, default_time_step, DEFAULT_PANELS};
use acmask_core::special::{std_normal_pdf, truncated_sinc};
use acmask_core::{Phasor, PointForce, SourceSpec, Vec3};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::figures::{self, FigureOptions, Scenario};
use crate::profile;
use crate::table::{Cell, Table};

/// Design and evaluate masking forces for a sinusoidally driven acoustic source.
#[derive(Debug, Parser)]
#[command(name = "acmask", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ConfigArg {
    /// Scenario config (JSON); defaults apply when omitted.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write CSV here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Field phasors along a ray from the source.
    Field(FieldArgs),
    /// Masking designs.
    #[command(subcommand)]
    Mask(MaskCommand),
    /// Phase optimization over target balls.
    Optimize(OptimizeArgs),
    /// Quadrature solution against the closed form at one (r, t).
    Oracle(OracleArgs),
    /// Regenerate the data behind one figure as CSV plus a JSON sidecar.
    Reproduce(ReproduceArgs),
    /// Least-squares kernel expansion of a forcing profile.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Design {
    /// Source alone.
    Unmasked,
    /// Force between source and sensor.
    One,
    /// Force behind the source.
    Force2,
    /// Weighted pair.
    Two,
    /// Concentric shell (needs --shell-k).
    Shell,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[command(flatten)]
    out: OutArg,
    /// Masking design.
    #[arg(long, value_enum, default_value = "unmasked")]
    design: Design,
    /// Shell index k ≥ 1 for --design shell.
    #[arg(long, default_value_t = 1)]
    shell_k: u32,
    /// Ray direction as x,y,z; defaults to the sensor direction.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    direction: Option<Vec<f64>>,
    /// First distance from the source (m).
    #[arg(long, default_value_t = 100.0)]
    r_min: f64,
    /// Last distance from the source (m).
    #[arg(long, default_value_t = 1000.0)]
    r_max: f64,
    /// Number of points.
    #[arg(long, default_value_t = 91)]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum MaskCommand {
    /// Print a design as JSON.
    Design(DesignArgs),
    /// Normalized residual amplitude on a ray, semicircle or grid about the sensor.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
struct DesignArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Number of point forces (1 or 2).
    #[arg(long, conflicts_with = "shell")]
    forces: Option<u8>,
    /// Side of the single force.
    #[arg(long, value_enum, default_value = "toward")]
    side: Side,
    /// Concentric shell with index K ≥ 1 instead of point forces.
    #[arg(long, value_name = "K")]
    shell: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Toward,
    Away,
}

impl From<Side> for AxisSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Toward => AxisSide::TowardSensor,
            Side::Away => AxisSide::AwayFromSensor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Path2d {
    /// Ray from the sensor at angle --phi, log-spaced in r.
    Ray,
    /// Semicircle of radius --radius, φ ∈ [0, π].
    Semicircle,
    /// Square grid of half-width --radius.
    Grid,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[command(flatten)]
    out: OutArg,
    /// Number of point forces (1 or 2).
    #[arg(long, default_value_t = 2)]
    forces: u8,
    /// Replace the force phases (rad), comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    phases: Option<Vec<f64>>,
    /// Sample path.
    #[arg(long, value_enum, default_value = "ray")]
    path: Path2d,
    /// Angle from the sensor direction for rays (rad).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
    /// Ray end, semicircle radius or grid half-width (m); defaults to epsilon_d.
    #[arg(long)]
    radius: Option<f64>,
    /// Points per ray, semicircle or grid side.
    #[arg(long, default_value_t = 101)]
    n: usize,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[command(flatten)]
    out: OutArg,
    /// Target radii (m, ascending, comma separated); defaults to the config radii.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleCase {
    /// Truncated sinc profile, compared with its exact transient solution.
    Sinc,
    /// Gaussian profile, compared with its quasi-steady closed form.
    Gaussian,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Profile.
    #[arg(long, value_enum)]
    case: OracleCase,
    /// Distance from the source center (m).
    #[arg(long, allow_negative_numbers = true)]
    r: f64,
    /// Time since forcing started (s).
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    /// Profile scale d (m); λ/4 for sinc and the config d for Gaussian by default.
    #[arg(long)]
    d: Option<f64>,
    /// Spline panels.
    #[arg(long, default_value_t = DEFAULT_PANELS)]
    panels: usize,
    /// Time step of the Duhamel integral (s); one 400th of a period by default.
    #[arg(long)]
    h_u: Option<f64>,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// Figure name (fig03 … fig09).
    figure: String,
    #[command(flatten)]
    config: ConfigArg,
    /// Output directory for <figure>.csv and <figure>.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelArg {
    Gaussian,
    Sinc,
}

impl From<KernelArg> for KernelShape {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Gaussian => KernelShape::Gaussian,
            KernelArg::Sinc => KernelShape::TruncatedSinc,
        }
    }
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// `gaussian` for the config source profile, or a CSV file with columns x,y,z,p.
    #[arg(long)]
    profile: String,
    /// Kernel shape.
    #[arg(long, value_enum, default_value = "sinc")]
    kernel: KernelArg,
    /// Kernel width (m); defaults to twice the spacing.
    #[arg(long)]
    width: Option<f64>,
    /// Center spacing (m); defaults to the source d.
    #[arg(long)]
    spacing: Option<f64>,
    /// Half-width of the center box (m); defaults to 4 d.
    #[arg(long = "box")]
    half_box: Option<f64>,
    /// Half-width of the built-in sample box (m); defaults to 6 d.
    #[arg(long)]
    sample_box: Option<f64>,
    /// Built-in sample spacing (m); defaults to d/2.
    #[arg(long)]
    sample_spacing: Option<f64>,
    /// Ridge relative to the largest normal-matrix diagonal.
    #[arg(long, default_value_t = DEFAULT_RIDGE)]
    ridge: f64,
    /// Write the coefficients (x,y,z,a) as CSV.
    #[arg(long, value_name = "FILE")]
    coefficients: Option<PathBuf>,
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Field(a) => field(a),
        Command::Mask(MaskCommand::Design(a)) => mask_design(a),
        Command::Mask(MaskCommand::Evaluate(a)) => mask_evaluate(a),
        Command::Optimize(a) => optimize(a),
        Command::Oracle(a) => oracle(a),
        Command::Reproduce(a) => reproduce(a),
        Command::Fit(a) => fit(a),
    }
}

fn load(c: &ConfigArg) -> CliResult<ScenarioConfig> {
    ScenarioConfig::load(c.config.as_deref())
}

fn emit(table: &Table, out: &OutArg) -> CliResult<()> {
    match &out.out {
        Some(p) => table.write_csv(BufWriter::new(File::create(p)?)),
        None => table.write_csv(io::stdout().lock()),
    }
}

fn usage(flag: &str, msg: &str) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

fn field(a: FieldArgs) -> CliResult<()> {
    let cfg = load(&a.config)?;
    let m = cfg.medium()?;
    let s = cfg.source()?;
    if !(a.r_min > 0.0 && a.r_max >= a.r_min) {
        return Err(usage("--r-min/--r-max", "need 0 < r_min <= r_max"));
    }
    if a.n == 0 {
        return Err(usage("--n", "must be positive"));
    }
    let dir = match a.direction.as_deref() {
        Some(&[x, y, z]) => Vec3::new(x, y, z),
        Some(_) => return Err(usage("--direction", "expected three comma-separated values")),
        None => cfg.sensor(),
    }
    .normalized()
    .ok_or_else(|| usage("--direction", "must be non-zero"))?;
    let evaluate: Box<dyn Fn(Vec3) -> acmask_core::Result<Phasor>> = match a.design {
        Design::Shell => {
            if a.shell_k == 0 {
                return Err(usage("--shell-k", "must be at least 1"));
            }
            let shell = shell_mask(&s, a.shell_k, &m)?;
            Box::new(move |x| Ok(source_phasor(&s, x, &m)? + source_phasor(&shell, x, &m)?))
        }
        d => {
            let sc = Scenario::new(&cfg)?;
            let design = match d {
                Design::Unmasked => sc.unmasked,
                Design::One => sc.force1,
                Design::Force2 => sc.force2,
                _ => sc.two,
            };
            Box::new(move |x| design.total_phasor(x, &m))
        }
    };
    let mut t = Table::new(&["r_m", "x_m", "y_m", "z_m", "re", "im", "amplitude", "phase_rad"]);
    for i in 0..a.n {
        let r = if a.n == 1 {
            a.r_min
        } else {
            a.r_min + (a.r_max - a.r_min) * i as f64 / (a.n - 1) as f64
        };
        let x = s.center + dir * r;
        let u = evaluate(x)?;
        t.push(vec![
            r.into(),
            x.x.into(),
            x.y.into(),
            x.z.into(),
            u.re.into(),
            u.im.into(),
            u.amplitude().into(),
            u.phase().into(),
        ]);
    }
    emit(&t, &a.out)
}

fn force_json(f: &PointForce, m: &acmask_core::Medium) -> Value {
    json!({
        "location": f.location.to_array(),
        "amplitude": f.amplitude,
        "scaled_amplitude": scaled_force_amplitude(f.amplitude, m),
        "phase": f.phase,
    })
}

fn source_json(s: &SourceSpec, m: &acmask_core::Medium) -> Value {
    json!({
        "kind": format!("{:?}", s.kind),
        "center": s.center.to_array(),
        "amplitude": s.amplitude,
        "scale": s.scale,
        "phase": s.phase,
        "scaled_amplitude": scaled_source_amplitude(s, m),
    })
}

fn print_json(v: &Value) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn mask_design(a: DesignArgs) -> CliResult<()> {
    let cfg = load(&a.config)?;
    let m = cfg.medium()?;
    let s = cfg.source()?;
    let x_d = cfg.sensor();
    let eps_s = cfg.geometry.epsilon_s;
    let body = match (a.shell, a.forces) {
        (Some(k), _) => {
            if k == 0 {
                return Err(usage("--shell", "K must be at least 1"));
            }
            let shell = shell_mask(&s, k, &m)?;
            json!({
                "design": "shell",
                "wavelength": m.wavelength(),
                "source": source_json(&s, &m),
                "shell": {"k": k, "radius": shell.scale, "amplitude": shell.amplitude, "phase": shell.phase},
                "combined_coefficient": combined_coefficient(&[s, shell], &m),
            })
        }
        (None, Some(1)) => {
            let f = optimal_one_force(&s, x_d, eps_s, a.side.into(), &m)?;
            json!({
                "design": "one_force",
                "wavelength": m.wavelength(),
                "source": source_json(&s, &m),
                "sensor": x_d.to_array(),
                "exclusion_radius": eps_s,
                "forces": [force_json(&f, &m)],
            })
        }
        (None, Some(2)) => {
            let d = optimal_two_force(&s, x_d, eps_s, &m)?;
            let w = d.weighted_forces();
            json!({
                "design": "two_force",
                "wavelength": m.wavelength(),
                "source": source_json(&s, &m),
                "sensor": x_d.to_array(),
                "exclusion_radius": eps_s,
                "beta_s": d.beta_s,
                "gamma": d.gamma,
                "forces": [force_json(&w[0], &m), force_json(&w[1], &m)],
                "unweighted_forces": [force_json(&d.force1, &m), force_json(&d.force2, &m)],
            })
        }
        (None, Some(n)) => return Err(usage("--forces", &format!("expected 1 or 2, got {n}"))),
        (None, None) => return Err(usage("--forces", "give --forces 1|2 or --shell K")),
    };
    print_json(&body)
}

fn mask_evaluate(a: EvaluateArgs) -> CliResult<()> {
    let cfg = load(&a.config)?;
    let sc = Scenario::new(&cfg)?;
    let mut design = match a.forces {
        1 => sc.force1.clone(),
        2 => sc.two.clone(),
        n => return Err(usage("--forces", &format!("expected 1 or 2, got {n}"))),
    };
    if let Some(p) = &a.phases {
        if p.len() != design.forces().len() {
            return Err(usage("--phases", &format!("expected {} values", design.forces().len())));
        }
        design = design.with_phases(p)?;
    }
    let radius = a.radius.unwrap_or(sc.eps_d);
    if !(radius > 0.0) {
        return Err(usage("--radius", "must be positive"));
    }
    if a.n < 2 {
        return Err(usage("--n", "must be at least 2"));
    }
    let m = &sc.medium;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    match a.path {
        Path2d::Ray => {
            let r_min = 1e-2 * radius.min(1.0);
            let (lo, hi) = (r_min.ln(), radius.ln());
            for i in 0..a.n {
                let r = if i + 1 == a.n {
                    radius
                } else {
                    (lo + (hi - lo) * i as f64 / (a.n - 1) as f64).exp()
                };
                pts.push((r * a.phi.cos(), r * a.phi.sin()));
            }
        }
        Path2d::Semicircle => {
            for i in 0..a.n {
                let phi = std::f64::consts::PI * i as f64 / (a.n - 1) as f64;
                pts.push((radius * phi.cos(), radius * phi.sin()));
            }
        }
        Path2d::Grid => {
            for i in 0..a.n {
                let y = -radius + 2.0 * radius * i as f64 / (a.n - 1) as f64;
                for j in 0..a.n {
                    pts.push((-radius + 2.0 * radius * j as f64 / (a.n - 1) as f64, y));
                }
            }
        }
    }
    let mut t = Table::new(&["x_m", "y_m", "r_m", "phi_rad", "A_NR"]);
    for (x, y) in pts {
        let a_nr = design.normalized_residual(sc.local_point(x, y), m)?;
        t.push(vec![
            x.into(),
            y.into(),
            x.hypot(y).into(),
            y.atan2(x).into(),
            a_nr.into(),
        ]);
    }
    emit(&t, &a.out)
}

fn optimize(a: OptimizeArgs) -> CliResult<()> {
    let mut cfg = load(&a.config)?;
    if let Some(r) = a.radii {
        if r.is_empty() || r.iter().any(|&v| !(v > 0.0)) || r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(usage("--radii", "must be positive and strictly ascending"));
        }
        cfg.radii = r;
    }
    let sc = Scenario::new(&cfg)?;
    let base = [sc.two.forces()[0].phase, sc.two.forces()[1].phase];
    let mut t = Table::new(&[
        "r_d_m",
        "E_opt0",
        "E_optrd",
        "ratio",
        "phi1_rad",
        "phi2_rad",
        "dphi1_rad",
        "dphi2_rad",
        "converged",
    ]);
    for r in figures::improvement_rows(&cfg)? {
        let phi = |i: usize| acmask_core::phasor::wrap_phase(base[i] + r.deviations[i]);
        t.push(vec![
            r.r_d.into(),
            r.e_analytic.into(),
            r.e_opt.into(),
            r.ratio.into(),
            phi(0).into(),
            phi(1).into(),
            r.deviations[0].into(),
            r.deviations[1].into(),
            r.converged.into(),
        ]);
    }
    emit(&t, &a.out)
}

fn oracle(a: OracleArgs) -> CliResult<()> {
    let cfg = load(&a.config)?;
    let m = cfg.medium()?;
    if !(a.r > 0.0) {
        return Err(usage("--r", "must be positive"));
    }
    if !(a.t >= 0.0) {
        return Err(usage("--t", "must be non-negative"));
    }
    let h_u = a.h_u.unwrap_or_else(|| default_time_step(&m));
    if !(h_u > 0.0) {
        return Err(usage("--h-u", "must be positive"));
    }
    let w = m.omega();
    let (d, exact, quad) = match a.case {
        OracleCase::Sinc => {
            let d = a.d.unwrap_or(m.wavelength() / 4.0);
            if !(d > 0.0) {
                return Err(usage("--d", "must be positive"));
            }
            let sp = build_g_spline(|r| truncated_sinc(r / d) / (d * d * d), d, a.panels)?;
            let exact = exact_field_sinc(a.r, a.t, d, &m)?;
            (d, exact, compute_u(a.r, a.t, &m, &sp, |s| (w * s).sin(), h_u)?)
        }
        OracleCase::Gaussian => {
            let d = a.d.unwrap_or(cfg.source.d);
            if !(d > 0.0) {
                return Err(usage("--d", "must be positive"));
            }
            let sp = build_g_spline(|r| std_normal_pdf(r / d) / (d * d * d), 8.0 * d, a.panels)?;
            let qss = qss_field(qss_coeff_gaussian(d, &m), a.r, a.t, &m);
            (d, qss, compute_u(a.r, a.t, &m, &sp, |s| (w * s).sin(), h_u)?)
        }
    };
    let mut t = Table::new(&["r_m", "t_s", "d_m", "exact", "quadrature", "abs_diff"]);
    t.push(vec![
        a.r.into(),
        a.t.into(),
        d.into(),
        exact.into(),
        quad.into(),
        (exact - quad).abs().into(),
    ]);
    t.write_csv(io::stdout().lock())
}

fn reproduce(a: ReproduceArgs) -> CliResult<()> {
    let cfg = load(&a.config)?;
    let opts = FigureOptions::default();
    let table = figures::reproduce(&a.figure, &cfg, &opts)?;
    let sidecar = json!({
        "figure": a.figure,
        "columns": table.columns,
        "rows": table.rows.len(),
        "config": cfg,
        "options": opts,
    });
    let (csv, json) = table.write_with_sidecar(&a.out, &a.figure, &sidecar)?;
    eprintln!("wrote {} and {}", csv.display(), json.display());
    Ok(())
}

fn fit(a: FitArgs) -> CliResult<()> {
    let cfg = load(&a.config)?;
    let m = cfg.medium()?;
    let d = cfg.source.d;
    let spacing = a.spacing.unwrap_or(d);
    let width = a.width.unwrap_or(2.0 * spacing);
    let half = a.half_box.unwrap_or(4.0 * d);
    for (flag, v) in [("--spacing", spacing), ("--width", width), ("--box", half)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(usage(flag, "must be positive"));
        }
    }
    let samples = if a.profile == "gaussian" {
        let sample_half = a.sample_box.unwrap_or(6.0 * d);
        let sample_spacing = a.sample_spacing.unwrap_or(0.5 * d);
        if !(sample_half > 0.0 && sample_spacing > 0.0) {
            return Err(usage("--sample-box/--sample-spacing", "must be positive"));
        }
        profile::gaussian_samples(cfg.source.a_s, d, sample_half, sample_spacing)?
    } else {
        profile::read_csv(Path::new(&a.profile))?
    };
    let lo = Vec3::new(-half, -half, -half);
    let hi = Vec3::new(half, half, half);
    let basis = KernelBasis::grid(a.kernel.into(), width, lo, hi, spacing)?;
    let n_centers = basis.len();
    if samples.len() < n_centers {
        return Err(usage(
            "--profile",
            &format!(
                "{} samples for {n_centers} centers; need at least as many samples",
                samples.len()
            ),
        ));
    }
    let fit = fit_coefficients(&samples, basis, a.ridge)?;
    if fit.ill_conditioned {
        eprintln!(
            "warning: normal equations are ill-conditioned (estimate {:.3e}); coefficients may be unreliable",
            fit.condition_estimate
        );
    }
    let far = 50.0 * m.wavelength();
    let dir = cfg.sensor().normalized().unwrap_or(Vec3::X);
    let amp = fit.expansion.synthesize_phasor(dir * far, &m)?.amplitude() * far;
    let mut summary = json!({
        "kernel": format!("{:?}", fit.expansion.basis().shape()),
        "width": width,
        "spacing": spacing,
        "box_half_width": half,
        "centers": n_centers,
        "samples": samples.len(),
        "ridge": fit.ridge,
        "residual_norm": fit.residual_norm,
        "relative_residual": fit.relative_residual,
        "condition_estimate": fit.condition_estimate,
        "ill_conditioned": fit.ill_conditioned,
        "far_field_coefficient": amp,
    });
    if a.profile == "gaussian" {
        let expected = cfg.source.a_s * qss_coeff_gaussian(d, &m);
        summary["far_field_expected"] = json!(expected);
        summary["far_field_relative_error"] = json!((amp / expected - 1.0).abs());
    }
    if let Some(path) = &a.coefficients {
        let mut t = Table::new(&["x_m", "y_m", "z_m", "a"]);
        let e = &fit.expansion;
        for (c, &coef) in e.basis().centers().iter().zip(e.coefficients()) {
            t.push(vec![Cell::Num(c.x), Cell::Num(c.y), Cell::Num(c.z), Cell::Num(coef)]);
        }
        t.write_csv(BufWriter::new(File::create(path)?))?;
    }
    print_json(&summary)
}
