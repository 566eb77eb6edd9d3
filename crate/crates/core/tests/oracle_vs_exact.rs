use acmask_core::analytic::{exact_field_sinc, qss_coeff_gaussian, qss_coeff_sinc};
use acmask_core::oracle::{build_g_spline, compute_u, default_time_step, DEFAULT_PANELS};
use acmask_core::special::{std_normal_pdf, truncated_sinc};
use acmask_core::Medium;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn water() -> Medium {
    Medium::from_frequency(1500.0, 100.0).unwrap()
}

#[test]
fn quadrature_matches_exact_sinc_solution() {
    let m = water();
    let (c, w, period) = (m.c(), m.omega(), m.period());
    let d = m.wavelength() / 4.0;
    let sp = build_g_spline(|r| truncated_sinc(r / d) / (d * d * d), d, DEFAULT_PANELS).unwrap();
    let h_u = default_time_step(&m);
    let coeff = qss_coeff_sinc(d, &m).abs();
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let (mut transient, mut steady) = (0, 0);
    for _ in 0..200 {
        let r = d * rng.gen_range(0.05..40.0);
        let t = (r / c + rng.gen_range(-0.5..4.0) * period).max(0.0);
        let exact = exact_field_sinc(r, t, d, &m).unwrap();
        let quad = compute_u(r, t, &m, &sp, |s| (w * s).sin(), h_u).unwrap();
        // Error relative to the steady amplitude at r, so that transient zero
        // crossings do not blow up the ratio.
        let scale = exact.abs().max(coeff / r);
        worst = worst.max((quad - exact).abs() / scale);
        if r > d && c * t - d > r {
            steady += 1;
        } else {
            transient += 1;
        }
    }
    assert!(transient > 20 && steady > 20, "{transient} {steady}");
    assert!(worst < 1e-6, "worst relative error {worst:e}");
}

#[test]
fn quadrature_converges_at_fourth_order() {
    let m = water();
    let w = m.omega();
    let d = m.wavelength() / 4.0;
    let sp = build_g_spline(|r| truncated_sinc(r / d) / (d * d * d), d, DEFAULT_PANELS).unwrap();
    for (r, periods) in [(40.0, 3.3), (75.0, 5.1), (9.0, 2.7)] {
        let t = r / m.c() + periods * m.period();
        let exact = exact_field_sinc(r, t, d, &m).unwrap();
        let err = |h: f64| (compute_u(r, t, &m, &sp, |s| (w * s).sin(), h).unwrap() - exact).abs();
        let coarse = m.period() / 25.0;
        let ratio = err(coarse) / err(coarse / 2.0);
        assert!(ratio >= 8.0, "r = {r}: ratio {ratio}");
    }
}

#[test]
fn gaussian_oscillation_amplitude() {
    let m = water();
    let w = m.omega();
    let d = 1.0;
    let sp = build_g_spline(|r| std_normal_pdf(r / d) / (d * d * d), 8.0 * d, DEFAULT_PANELS).unwrap();
    let r = 10.0 * m.wavelength();
    let t0 = (r + 8.0 * d) / m.c() + 3.0 * m.period();
    let h_u = default_time_step(&m);
    let amp = (0..1000)
        .map(|i| {
            let t = t0 + m.period() * i as f64 / 1000.0;
            compute_u(r, t, &m, &sp, |s| (w * s).sin(), h_u).unwrap().abs()
        })
        .fold(0.0, f64::max);
    let expected = qss_coeff_gaussian(d, &m) / r;
    assert!((amp / expected - 1.0).abs() < 1e-4, "{}", amp / expected);
}
