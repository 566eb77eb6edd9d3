//! Numerical evaluation of the Duhamel integral solution
//!
//! ```text
//! u(r, t) = 1/(2cr) ∫₀ᵗ f(t − τ) (G(r + cτ) − G(r − cτ)) dτ,
//! G(s)    = ∫_{+∞}^{|s|} s′σ(s′) ds′
//! ```
//!
//! for a radial profile `σ` supported in `[0, d]`. `G` is tabulated by a
//! cumulative Simpson rule and interpolated with a not-a-knot cubic spline;
//! the time integral is a composite Simpson rule restricted to the windows
//! where `G` is nonzero. Nothing here reuses the closed forms in
//! [`crate::analytic`], so it serves as an independent check on them.

use alloc::vec;
use alloc::vec::Vec;

use crate::analytic::RHO_MIN;
use crate::error::{check_positive, Error, Result};
use crate::quad::simpson_panels;
use crate::types::Medium;

/// Default number of spline panels.
pub const DEFAULT_PANELS: usize = 2000;
/// Default time steps per oscillation period.
pub const DEFAULT_STEPS_PER_PERIOD: f64 = 400.0;

/// Cubic-spline representation of `G(s)` on `[0, d]`, extended evenly and by
/// zero beyond `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GSpline {
    d: f64,
    h: f64,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl GSpline {
    /// Core radius `d`.
    pub fn core_radius(&self) -> f64 {
        self.d
    }

    /// Tabulated values `G_j` at `s_j = j·d/N`. The last one is exactly zero.
    pub fn knot_values(&self) -> &[f64] {
        &self.values
    }

    /// Evaluate `G(s)` for any real `s`: even, and clamped to `G(d) = 0` for `|s| ≥ d`.
    pub fn eval(&self, s: f64) -> f64 {
        let x = libm::fabs(s);
        if x >= self.d {
            return 0.0;
        }
        let n = self.values.len() - 1;
        let j = ((x / self.h) as usize).min(n - 1);
        let x0 = j as f64 * self.h;
        let a = (x0 + self.h - x) / self.h;
        let b = 1.0 - a;
        let h2 = self.h * self.h / 6.0;
        a * self.values[j]
            + b * self.values[j + 1]
            + ((a * a * a - a) * self.second[j] + (b * b * b - b) * self.second[j + 1]) * h2
    }

    /// Evaluate at many points.
    pub fn eval_batch(&self, s: &[f64]) -> Vec<f64> {
        s.iter().map(|&x| self.eval(x)).collect()
    }
}

/// Tabulate `G` for the radial profile `sigma` on `[0, d]` with `n` panels.
pub fn build_g_spline<F: Fn(f64) -> f64>(sigma: F, d: f64, n: usize) -> Result<GSpline> {
    check_positive("d", d)?;
    if n < 4 {
        return Err(Error::InvalidPanelCount(n));
    }
    let h = d / n as f64;
    let g = |s: f64| s * sigma(s);
    let mut values = vec![0.0; n + 1];
    let mut prev = g(0.0);
    for j in 1..=n {
        let s = j as f64 * h;
        let cur = g(s);
        values[j] = values[j - 1] + (prev + 4.0 * g(s - 0.5 * h) + cur) * h / 6.0;
        prev = cur;
    }
    let total = values[n];
    for v in &mut values {
        *v -= total;
    }
    let second = not_a_knot_second_derivatives(&values, h);
    Ok(GSpline { d, h, values, second })
}

/// Second derivatives of the not-a-knot cubic spline through equally spaced
/// values. Needs at least five points.
fn not_a_knot_second_derivatives(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len() - 1;
    // Interior equations M_{j-1} + 4M_j + M_{j+1} = 6Δ²y_j/h², j = 1..n-1.
    // Not-a-knot gives M_0 = 2M_1 − M_2 and M_n = 2M_{n-1} − M_{n-2}, which
    // turn the first and last rows into 6M_1 = rhs_1 and 6M_{n-1} = rhs_{n-1}.
    let m = n - 1;
    let rhs: Vec<f64> = (1..n)
        .map(|j| 6.0 * (y[j + 1] - 2.0 * y[j] + y[j - 1]) / (h * h))
        .collect();
    let mut lower = vec![1.0; m];
    let mut diag = vec![4.0; m];
    let mut upper = vec![1.0; m];
    diag[0] = 6.0;
    upper[0] = 0.0;
    diag[m - 1] = 6.0;
    lower[m - 1] = 0.0;
    let interior = solve_tridiagonal(&lower, &diag, &upper, &rhs);
    let mut second = vec![0.0; n + 1];
    second[1..n].copy_from_slice(&interior);
    second[0] = 2.0 * second[1] - second[2];
    second[n] = 2.0 * second[n - 1] - second[n - 2];
    second
}

fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * c[i - 1];
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Evaluate `G` through the spline (even extension, zero beyond `d`).
pub fn eval_g(sp: &GSpline, s: f64) -> f64 {
    sp.eval(s)
}

/// Default time step `h_u = period/400`.
pub fn default_time_step(m: &Medium) -> f64 {
    m.period() / DEFAULT_STEPS_PER_PERIOD
}

/// `u(r, T)` by Simpson quadrature of the Duhamel integral with time step
/// at most `h_u`.
///
/// The outgoing term is integrated over `[t_b, t_e]` and, for `r < d`, the
/// incoming term over `[0, t_2]`; outside these windows `G` vanishes.
pub fn compute_u<F: Fn(f64) -> f64>(r: f64, t: f64, m: &Medium, sp: &GSpline, f: F, h_u: f64) -> Result<f64> {
    if r < RHO_MIN {
        return Err(Error::SingularEvaluation { distance: r });
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter { name: "t", value: t });
    }
    check_positive("h_u", h_u)?;
    let c = m.c();
    let d = sp.core_radius();
    let panels = |a: f64, b: f64| (libm::ceil((b - a) / h_u) as usize).max(1);

    let t_b = t.min(((r - d) / c).max(0.0));
    let t_e = t.min((r + d) / c);
    let outgoing = simpson_panels(|tau| f(t - tau) * sp.eval(r - c * tau), t_b, t_e, panels(t_b, t_e));

    let t_2 = t.min(((d - r) / c).max(0.0));
    let incoming = if t_2 > 0.0 {
        simpson_panels(|tau| f(t - tau) * sp.eval(r + c * tau), 0.0, t_2, panels(0.0, t_2))
    } else {
        0.0
    };
    Ok((incoming - outgoing) / (2.0 * c * r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{std_normal_pdf, truncated_sinc};
    use core::f64::consts::PI;

    fn sinc_profile(d: f64) -> impl Fn(f64) -> f64 {
        move |r| truncated_sinc(r / d) / (d * d * d)
    }

    #[test]
    fn sinc_spline_matches_closed_form() {
        let d = 3.75;
        let sp = build_g_spline(sinc_profile(d), d, DEFAULT_PANELS).unwrap();
        let mut worst = 0.0f64;
        for i in 0..=5000 {
            let s = -d + 2.0 * d * i as f64 / 5000.0;
            let exact = -(1.0 + (PI * s / d).cos()) / (PI * PI * d);
            worst = worst.max((sp.eval(s) - exact).abs());
        }
        assert!(worst < 1e-8, "max error {worst}");
    }

    #[test]
    fn gaussian_spline_matches_closed_form() {
        let d = 1.0;
        let sp = build_g_spline(|r| std_normal_pdf(r / d) / (d * d * d), 8.0 * d, DEFAULT_PANELS).unwrap();
        for i in 0..=800 {
            let s = 8.0 * d * i as f64 / 800.0;
            let exact = -std_normal_pdf(s / d) / d;
            assert!((sp.eval(s) - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_profile() {
        let sp = build_g_spline(|_| 0.0, 2.0, 10).unwrap();
        assert!(sp.knot_values().iter().all(|&v| v == 0.0));
        assert_eq!(sp.eval(0.3), 0.0);
    }

    #[test]
    fn boundary_and_symmetry() {
        let d = 2.0;
        let sp = build_g_spline(sinc_profile(d), d, 100).unwrap();
        assert_eq!(*sp.knot_values().last().unwrap(), 0.0);
        assert_eq!(eval_g(&sp, d), 0.0);
        assert_eq!(eval_g(&sp, -d), 0.0);
        assert_eq!(eval_g(&sp, 10.0 * d), 0.0);
        assert_eq!(eval_g(&sp, -0.77), eval_g(&sp, 0.77));
        assert_eq!(sp.eval_batch(&[0.5, -0.5]), vec![sp.eval(0.5); 2]);
    }

    #[test]
    fn rejects_few_panels() {
        assert_eq!(build_g_spline(|_| 1.0, 1.0, 3), Err(Error::InvalidPanelCount(3)));
    }

    #[test]
    fn spline_reproduces_cubics() {
        // Not-a-knot splines are exact for cubic data.
        let y: Vec<f64> = (0..=6)
            .map(|j| {
                let x = j as f64 * 0.5;
                x * x * x - x
            })
            .collect();
        let m = not_a_knot_second_derivatives(&y, 0.5);
        for (j, mj) in m.iter().enumerate() {
            assert!((mj - 6.0 * j as f64 * 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn causal_before_arrival() {
        let m = Medium::from_frequency(1500.0, 100.0).unwrap();
        let d = 3.0;
        let sp = build_g_spline(sinc_profile(d), d, 200).unwrap();
        let r = 200.0;
        let t = (r - d) / m.c() * 0.99;
        let u = compute_u(r, t, &m, &sp, |t| (m.omega() * t).sin(), default_time_step(&m)).unwrap();
        assert!(u.abs() < 1e-15);
    }

    #[test]
    fn linear_in_profile() {
        let m = Medium::from_frequency(1500.0, 100.0).unwrap();
        let d = 4.0;
        let a = |r: f64| truncated_sinc(r / d);
        let b = |r: f64| std_normal_pdf(r) * 3.0;
        let sum = |r: f64| a(r) + b(r);
        let f = |t: f64| (m.omega() * t).sin();
        let h = default_time_step(&m);
        let spa = build_g_spline(a, d, 400).unwrap();
        let spb = build_g_spline(b, d, 400).unwrap();
        let sps = build_g_spline(sum, d, 400).unwrap();
        for (r, t) in [(1.0, 0.002), (6.0, 0.01), (50.0, 0.2)] {
            let ua = compute_u(r, t, &m, &spa, f, h).unwrap();
            let ub = compute_u(r, t, &m, &spb, f, h).unwrap();
            let us = compute_u(r, t, &m, &sps, f, h).unwrap();
            assert!((us - (ua + ub)).abs() <= 1e-12 * us.abs().max(ua.abs()).max(ub.abs()));
        }
    }

    #[test]
    fn periodic_in_quasi_steady_region() {
        let m = Medium::from_frequency(1500.0, 100.0).unwrap();
        let d = 5.0;
        let sp = build_g_spline(sinc_profile(d), d, DEFAULT_PANELS).unwrap();
        let f = |t: f64| (m.omega() * t).sin();
        let h = default_time_step(&m);
        let r = 60.0;
        let t = 0.3;
        let amp = crate::analytic::qss_coeff_sinc(d, &m).abs() / r;
        let u0 = compute_u(r, t, &m, &sp, f, h).unwrap();
        let u1 = compute_u(r, t + m.period(), &m, &sp, f, h).unwrap();
        assert!((u0 - u1).abs() < 1e-9 * amp);
    }
}
