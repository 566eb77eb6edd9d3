//! Acceptance checks. Prints one PASS/FAIL line per check and exits non-zero
//! if any check fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use acmask::figures::{self, FigureOptions};
use acmask::ScenarioConfig;
use acmask_core::analytic::{
    exact_field_sinc, qss_coeff_gaussian, qss_coeff_point, qss_coeff_shell, qss_coeff_sinc, qss_field,
    radial_wave_residual, QssRegion,
};
use acmask_core::kernel::{
    fit_coefficients, grid_points, numeric_normalization, KernelBasis, KernelShape, DEFAULT_RIDGE,
};
use acmask_core::masking::{combined_coefficient, scaled_source_amplitude, shell_mask, MaskingConfig};
use acmask_core::oracle::{build_g_spline, compute_u, default_time_step, DEFAULT_PANELS};
use acmask_core::region::{improvement_curve, ImprovementRow, OptimizerSettings};
use acmask_core::special::{std_normal_pdf, truncated_sinc};
use acmask_core::{Medium, SourceSpec, TargetRegion, Vec3};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const X_D: Vec3 = Vec3::new(750.0, 0.0, 0.0);
const EPS: f64 = 15.0;

fn water() -> Medium {
    Medium::from_frequency(1500.0, 100.0).unwrap()
}

fn source() -> SourceSpec {
    SourceSpec::gaussian(Vec3::ZERO, 1.0, 1.0).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

struct Suite {
    failures: usize,
}

impl Suite {
    fn check(&mut self, id: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed <= l);
        let pass = out.pass && in_time;
        if !pass {
            self.failures += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" / {:.0?}", l));
        println!(
            "{} {id}: {} [{:.2?}{budget}]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed
        );
    }
}

fn in_ball(rng: &mut StdRng, center: Vec3, radius: f64) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() <= 1.0 {
            return center + v * radius;
        }
    }
}

fn self_masking_sinc() -> Outcome {
    let m = water();
    let (c, lambda) = (m.c(), m.wavelength());
    let reference = qss_coeff_sinc(lambda / 4.0, &m).abs();
    let mut rng = StdRng::seed_from_u64(11);
    let (mut worst_coeff, mut worst_field) = (0.0f64, 0.0f64);
    for k in 1..=3 {
        let d = lambda * (k + 1) as f64 / 2.0;
        worst_coeff = worst_coeff.max(qss_coeff_sinc(d, &m).abs() * c * c);
        let region = QssRegion::new(d);
        for _ in 0..50 {
            let r = rng.gen_range(1.001 * d..1000.0);
            let t = (r + d) / c + rng.gen_range(1e-6..2.0);
            assert!(region.contains(r, t, &m));
            let u = exact_field_sinc(r, t, d, &m).unwrap();
            worst_field = worst_field.max(u.abs() / (reference / r));
        }
    }
    outcome(
        worst_coeff < 1e-15 && worst_field < 1e-12,
        format!("c²|C| max {worst_coeff:.2e} (< 1e-15), |u|/unmasked max {worst_field:.2e} (< 1e-12)"),
    )
}

fn self_masking_shell() -> Outcome {
    let m = water();
    let (c, lambda) = (m.c(), m.wavelength());
    let worst = (1..=3)
        .map(|k| qss_coeff_shell(lambda * k as f64 / 2.0, &m).abs() * c * c / (lambda * lambda))
        .fold(0.0, f64::max);
    outcome(worst < 1e-15, format!("c²|C|/λ² max {worst:.2e} (< 1e-15)"))
}

fn oracle_equivalence() -> Outcome {
    let m = water();
    let (c, w, period) = (m.c(), m.omega(), m.period());
    let d = m.wavelength() / 4.0;
    let sp = build_g_spline(|r| truncated_sinc(r / d) / (d * d * d), d, DEFAULT_PANELS).unwrap();
    let h_u = default_time_step(&m);
    let coeff = qss_coeff_sinc(d, &m).abs();
    let mut rng = StdRng::seed_from_u64(7);
    let (mut worst, mut transient, mut steady) = (0.0f64, 0, 0);
    for _ in 0..200 {
        let r = d * rng.gen_range(0.05..40.0);
        let t = (r / c + rng.gen_range(-0.5..4.0) * period).max(0.0);
        let exact = exact_field_sinc(r, t, d, &m).unwrap();
        let quad = compute_u(r, t, &m, &sp, |s| (w * s).sin(), h_u).unwrap();
        worst = worst.max((quad - exact).abs() / exact.abs().max(coeff / r));
        if QssRegion::new(d).contains(r, t, &m) {
            steady += 1;
        } else {
            transient += 1;
        }
    }
    let mut min_ratio = f64::INFINITY;
    for (r, periods) in [(40.0, 3.3), (75.0, 5.1), (9.0, 2.7)] {
        let t = r / c + periods * period;
        let exact = exact_field_sinc(r, t, d, &m).unwrap();
        let err = |h: f64| (compute_u(r, t, &m, &sp, |s| (w * s).sin(), h).unwrap() - exact).abs();
        let coarse = period / 25.0;
        min_ratio = min_ratio.min(err(coarse) / err(coarse / 2.0));
    }
    outcome(
        worst < 1e-6 && min_ratio >= 8.0 && transient > 0 && steady > 0,
        format!(
            "max rel err {worst:.2e} (< 1e-6) over {transient} transient + {steady} steady points, \
             Richardson factor min {min_ratio:.1} (>= 8)"
        ),
    )
}

fn shell_masking() -> Outcome {
    let m = water();
    let s = source();
    let unmasked = scaled_source_amplitude(&s, &m);
    let worst = (1..=3)
        .map(|k| {
            let shell = shell_mask(&s, k, &m).unwrap();
            combined_coefficient(&[s, shell], &m).abs() / unmasked
        })
        .fold(0.0, f64::max);
    outcome(worst < 1e-14, format!("combined/unmasked max {worst:.2e} (< 1e-14)"))
}

fn one_force_design() -> Outcome {
    let m = water();
    let cfg = MaskingConfig::one_force(source(), X_D, EPS, &m).unwrap();
    let center = cfg.normalized_residual(X_D, &m).unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    let (mut worst, mut at) = (0.0f64, X_D);
    for _ in 0..500 {
        let x = in_ball(&mut rng, X_D, EPS);
        let a = cfg.normalized_residual(x, &m).unwrap();
        if a > worst {
            worst = a;
            at = x;
        }
    }
    let rel = at - X_D;
    outcome(
        center < 1e-12 && worst <= 4.2e-4,
        format!(
            "A(x_d) {center:.2e} (< 1e-12), max over 500 random points {worst:.3e} (<= 4.2e-4) \
             at offset ({:.1}, {:.1}, {:.1}) m",
            rel.x, rel.y, rel.z
        ),
    )
}

fn slope(design: &MaskingConfig, phi: f64, m: &Medium) -> f64 {
    let n = 41;
    let (lo, hi) = (0.1f64.ln(), 2.0f64.ln());
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let lr = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let r = lr.exp();
            let x = X_D + Vec3::new(r * phi.cos(), r * phi.sin(), 0.0);
            (lr, design.normalized_residual(x, m).unwrap().ln())
        })
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n as f64;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n as f64;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn scaling_exponents() -> Outcome {
    let m = water();
    let one = MaskingConfig::one_force(source(), X_D, EPS, &m).unwrap();
    let two = MaskingConfig::two_force(source(), X_D, EPS, &m).unwrap();
    let s = [
        (slope(&one, 0.0, &m), 1.0),
        (slope(&two, 0.0, &m), 2.0),
        (slope(&one, PI / 2.0, &m), 2.0),
        (slope(&two, PI / 2.0, &m), 2.0),
    ];
    outcome(
        s.iter().all(|(got, want)| (got - want).abs() <= 0.1),
        format!(
            "slopes φ=0: one {:.3}, two {:.3}; φ=π/2: one {:.3}, two {:.3}",
            s[0].0, s[1].0, s[2].0, s[3].0
        ),
    )
}

fn ball_max(design: &MaskingConfig, m: &Medium, pts: &[Vec3]) -> f64 {
    pts.iter()
        .map(|&x| design.normalized_residual(x, m).unwrap())
        .fold(0.0, f64::max)
}

fn two_force_superiority() -> Outcome {
    let m = water();
    let one = MaskingConfig::one_force(source(), X_D, EPS, &m).unwrap();
    let two = MaskingConfig::two_force(source(), X_D, EPS, &m).unwrap();
    let mut pts = TargetRegion::with_default_sampling(X_D, EPS)
        .unwrap()
        .half_disk_points(Vec3::ZERO)
        .unwrap();
    let mut rng = StdRng::seed_from_u64(13);
    pts.extend((0..5000).map(|_| in_ball(&mut rng, X_D, EPS)));
    let (a1, a2) = (ball_max(&one, &m, &pts), ball_max(&two, &m, &pts));
    outcome(
        a1 / a2 > 1e3,
        format!(
            "max A one-force {a1:.3e}, two-force {a2:.3e}, ratio {:.3e} (> 1e3)",
            a1 / a2
        ),
    )
}

fn improvement(radii: &[f64]) -> Vec<ImprovementRow> {
    let m = water();
    let two = MaskingConfig::two_force(source(), X_D, EPS, &m).unwrap();
    improvement_curve(
        &two,
        radii,
        TargetRegion::DEFAULT_RADIAL,
        TargetRegion::DEFAULT_AZIMUTHAL,
        OptimizerSettings::default(),
        &m,
    )
    .unwrap()
}

fn finite_region_optimization(rows: &[ImprovementRow]) -> Outcome {
    let tested: Vec<&ImprovementRow> = rows.iter().filter(|r| r.r_d >= 1.0).collect();
    let never_worse = tested.iter().all(|r| r.e_opt <= r.e_analytic);
    let large = tested.iter().filter(|r| r.r_d >= 30.0).all(|r| r.ratio >= 3.0);
    let small = tested.iter().filter(|r| r.r_d <= 2.0).all(|r| r.ratio <= 1.1);
    let list = tested
        .iter()
        .map(|r| format!("{}:{:.3}", r.r_d, r.ratio))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(
        never_worse && large && small,
        format!("ratios r_d:ratio {list}; E_opt <= E_opt0 everywhere: {never_worse}"),
    )
}

fn phase_limit(rows: &[ImprovementRow]) -> Outcome {
    if rows.is_empty() {
        return outcome(false, "no optimization results".into());
    }
    let dev = |r: &ImprovementRow| r.deviations[0].abs().max(r.deviations[1].abs());
    let first = dev(&rows[0]);
    let last = dev(rows.last().unwrap());
    let growing = rows.windows(2).all(|w| dev(&w[1]) >= dev(&w[0]));
    let list = rows
        .iter()
        .map(|r| format!("{}:{:.1e}", r.r_d, dev(r)))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(
        rows[0].r_d == 0.5 && first < 5e-3 && growing && (1e-2..=1.0).contains(&last),
        format!("max |Δφ| by r_d {list}; at 0.5 m < 5e-3, non-decreasing, at 75 m in [1e-2, 1]"),
    )
}

fn kernel_superposition() -> Outcome {
    let m = water();
    let d = 1.0;
    let lo = Vec3::new(-6.0 * d, -6.0 * d, -6.0 * d);
    let samples: Vec<(Vec3, f64)> = grid_points(lo, -lo, 0.5 * d)
        .unwrap()
        .into_iter()
        .map(|x| (x, std_normal_pdf(x.norm() / d) / (d * d * d)))
        .collect();
    let b = Vec3::new(4.0 * d, 4.0 * d, 4.0 * d);
    let basis = KernelBasis::grid(KernelShape::TruncatedSinc, 2.0 * d, -b, b, d).unwrap();
    let fit = fit_coefficients(&samples, basis, DEFAULT_RIDGE).unwrap();
    let lambda = m.wavelength();
    let expected = qss_coeff_gaussian(d, &m);
    let mut rng = StdRng::seed_from_u64(17);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let dir = in_ball(&mut rng, Vec3::ZERO, 1.0).normalized().unwrap();
        let r = rng.gen_range(20.0..100.0) * lambda;
        let amp = fit.expansion.synthesize_phasor(dir * r, &m).unwrap().amplitude();
        worst = worst.max((amp * r / expected - 1.0).abs());
    }
    let zg = (numeric_normalization(KernelShape::Gaussian, 1e-13) - 2.0 * PI).abs();
    let zs = (numeric_normalization(KernelShape::TruncatedSinc, 1e-13) - 4.0 / PI).abs();
    outcome(
        worst < 0.02 && zg < 1e-10 && zs < 1e-10,
        format!("far-field rel err max {worst:.2e} (< 2e-2), |Z_gauss − 2π| {zg:.1e}, |Z_sinc − 4/π| {zs:.1e}"),
    )
}

fn pde_residual() -> Outcome {
    let m = water();
    let (c, lambda) = (m.c(), m.wavelength());
    let h = lambda / 200.0;
    let forms = [
        ("sinc", qss_coeff_sinc(lambda / 4.0, &m), lambda / 4.0),
        ("gaussian", qss_coeff_gaussian(1.0, &m), 8.0),
        ("point", qss_coeff_point(&m), 0.0),
        ("shell", qss_coeff_shell(lambda / 4.0, &m), lambda / 4.0),
    ];
    let mut rng = StdRng::seed_from_u64(19);
    let mut worst = 0.0f64;
    for (_, coeff, r_eff) in forms {
        for _ in 0..100 {
            let r = rng.gen_range((r_eff + 2.0 * h).max(1.0)..1000.0);
            let t = (r + r_eff) / c + rng.gen_range(0.01..3.0);
            let field = |r: f64, t: f64| qss_field(coeff, r, t, &m);
            let res = radial_wave_residual(field, r, t, h, &m);
            worst = worst.max(res.abs() / (m.omega().powi(2) * (coeff / r).abs()));
        }
    }
    outcome(
        worst < 1e-4,
        format!("max |residual|/(ω²C/r) {worst:.2e} (< 1e-4) over 4 × 100 points"),
    )
}

fn trace_ordering() -> Outcome {
    let t = figures::fig03(&ScenarioConfig::default(), &FigureOptions::default()).unwrap();
    let amp = |col: &str| t.numbers(col).into_iter().map(f64::abs).fold(0.0, f64::max);
    let (s, f1, f2, wt) = (amp("u_source"), amp("u_f1"), amp("u_f2"), amp("u_weighted"));
    outcome(
        s > f1 && s > f2 && f1 > wt && f2 > wt && s / wt >= 1e3,
        format!("peak |u| source {s:.3e}, force 1 {f1:.3e}, force 2 {f2:.3e}, weighted {wt:.3e}"),
    )
}

/// Index of the minimum over grid points inside the disk of radius `half`,
/// plus the maximum there.
fn disk_extrema(t: &acmask::Table, panel: &str, half: f64) -> ((f64, f64, f64), f64) {
    let p = t.filter("panel", panel);
    let (xs, ys, vs) = (p.numbers("x_m"), p.numbers("y_m"), p.numbers("log10_A_NR"));
    let mut min = (0.0, 0.0, f64::INFINITY);
    let mut max = f64::NEG_INFINITY;
    for i in 0..vs.len() {
        if xs[i].hypot(ys[i]) <= half * (1.0 + 1e-12) {
            if vs[i] < min.2 {
                min = (xs[i], ys[i], vs[i]);
            }
            max = max.max(vs[i]);
        }
    }
    (min, max)
}

fn contour_minima() -> Outcome {
    let cfg = ScenarioConfig::default();
    let opts = FigureOptions::default();
    let f6 = figures::fig06(&cfg, &opts).unwrap();
    let step = 2.0 * EPS / (opts.grid_points - 1) as f64;
    let (one, _) = disk_extrema(&f6, "one_force", EPS);
    let (two, _) = disk_extrema(&f6, "two_force", EPS);
    let centered = |p: (f64, f64, f64)| p.0.abs() < 1e-9 && p.1.abs() < 1e-9;
    let f9 = figures::fig09(&cfg, &opts).unwrap();
    let r = opts.large_region_radius;
    let (ana, ana_max) = disk_extrema(&f9, "analytic", r);
    let (opt, opt_max) = disk_extrema(&f9, "optimized", r);
    let interior = opt.0.hypot(opt.1) < r - step;
    outcome(
        centered(one) && centered(two) && centered(ana) && interior && opt_max < ana_max,
        format!(
            "small-region minima at ({:.1}, {:.1}) and ({:.1}, {:.1}); large region analytic min at ({:.1}, {:.1}), \
             optimized min at ({:.1}, {:.1}); max log10 A {ana_max:.3} vs {opt_max:.3}",
            one.0, one.1, two.0, two.1, ana.0, ana.1, opt.0, opt.1
        ),
    )
}

fn main() {
    let mut suite = Suite { failures: 0 };
    let secs = |s| Some(Duration::from_secs(s));
    suite.check("self_masking_sinc", secs(1), self_masking_sinc);
    suite.check("self_masking_shell", None, self_masking_shell);
    suite.check("oracle_equivalence", secs(30), oracle_equivalence);
    suite.check("shell_masking", None, shell_masking);
    suite.check("one_force_design", None, one_force_design);
    suite.check("scaling_exponents", None, scaling_exponents);
    suite.check("two_force_superiority", secs(10), two_force_superiority);
    let mut rows = Vec::new();
    suite.check("finite_region_optimization", secs(300), || {
        rows = improvement(&[0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 30.0, 50.0, 75.0]);
        finite_region_optimization(&rows)
    });
    suite.check("phase_limit", None, || phase_limit(&rows));
    suite.check("kernel_superposition", None, kernel_superposition);
    suite.check("pde_residual", None, pde_residual);
    suite.check("trace_ordering", None, trace_ordering);
    suite.check("contour_minima", None, contour_minima);
    println!("{} check(s) failed", suite.failures);
    if suite.failures > 0 {
        std::process::exit(1);
    }
}
