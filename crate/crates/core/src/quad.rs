//! One-dimensional quadrature.

/// Composite Simpson rule on `[a, b]` with `n` panels, each panel using its
/// endpoints and midpoint (`(f₀ + 4f_½ + f₁)·h/6`). Returns 0 when `a == b`.
pub fn simpson_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n.max(1);
    let h = (b - a) / n as f64;
    if h == 0.0 {
        return 0.0;
    }
    let mut acc = f(a) + f(b);
    for k in 1..n {
        acc += 2.0 * f(a + k as f64 * h);
    }
    for k in 0..n {
        acc += 4.0 * f(a + (k as f64 + 0.5) * h);
    }
    acc * h / 6.0
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
///
/// The interval is first split into 16 equal pieces so that narrow features
/// are not missed by the coarsest estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    const PIECES: usize = 16;
    let h = (b - a) / PIECES as f64;
    (0..PIECES)
        .map(|i| {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == PIECES { b } else { lo + h };
            let fa = f(lo);
            let fb = f(hi);
            let fm = f(0.5 * (lo + hi));
            let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
            adaptive_step(f, lo, hi, fa, fm, fb, whole, tol / PIECES as f64, 50)
        })
        .sum()
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || libm::fabs(delta) <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}
