//! Nelder–Mead simplex minimization in a fixed number of dimensions.

/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexSettings {
    /// Maximum number of iterations.
    pub max_iters: usize,
    /// Stop when the spread of objective values over the simplex falls below this.
    pub f_tol: f64,
    /// Stop when every vertex is within this distance (max-norm) of the best one.
    pub x_tol: f64,
    /// Edge length of the initial simplex.
    pub initial_step: f64,
}

impl Default for SimplexSettings {
    fn default() -> Self {
        SimplexSettings {
            max_iters: 500,
            f_tol: 1e-12,
            x_tol: 1e-12,
            initial_step: 0.05,
        }
    }
}

/// Outcome of a simplex run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexResult<const N: usize> {
    /// Best vertex found.
    pub x: [f64; N],
    /// Objective at `x`.
    pub f: f64,
    /// Iterations performed.
    pub iterations: usize,
    /// Whether a tolerance was met before `max_iters`.
    pub converged: bool,
}

/// Minimize `f` starting from `x0` with the standard reflection, expansion,
/// contraction and shrink coefficients (1, 2, ½, ½).
pub fn nelder_mead<const N: usize, F: FnMut(&[f64; N]) -> f64>(
    mut f: F,
    x0: [f64; N],
    settings: &SimplexSettings,
) -> SimplexResult<N> {
    let mut pts = [[0.0; N]; 8];
    assert!(N + 1 <= pts.len(), "simplex dimension too large");
    let mut vals = [0.0; 8];
    pts[0] = x0;
    for i in 0..N {
        let mut p = x0;
        p[i] += settings.initial_step;
        pts[i + 1] = p;
    }
    for i in 0..=N {
        vals[i] = f(&pts[i]);
    }

    let mut iterations = 0;
    let mut converged = false;
    loop {
        sort_vertices(&mut pts[..=N], &mut vals[..=N]);
        let spread = vals[N] - vals[0];
        let size = (1..=N)
            .flat_map(|i| (0..N).map(move |k| (i, k)))
            .map(|(i, k)| libm::fabs(pts[i][k] - pts[0][k]))
            .fold(0.0, f64::max);
        if spread.abs() < settings.f_tol || size < settings.x_tol {
            converged = true;
            break;
        }
        if iterations >= settings.max_iters {
            break;
        }
        iterations += 1;

        let mut centroid = [0.0; N];
        for p in &pts[..N] {
            for k in 0..N {
                centroid[k] += p[k] / N as f64;
            }
        }
        let along = |t: f64| -> [f64; N] {
            let mut q = [0.0; N];
            for k in 0..N {
                q[k] = centroid[k] + t * (pts[N][k] - centroid[k]);
            }
            q
        };

        let xr = along(-1.0);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            if fe < fr {
                pts[N] = xe;
                vals[N] = fe;
            } else {
                pts[N] = xr;
                vals[N] = fr;
            }
            continue;
        }
        if fr < vals[N - 1] {
            pts[N] = xr;
            vals[N] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[N] {
            let xc = along(-0.5);
            (xc, f(&xc))
        } else {
            let xc = along(0.5);
            (xc, f(&xc))
        };
        if fc < vals[N].min(fr) {
            pts[N] = xc;
            vals[N] = fc;
            continue;
        }
        let best = pts[0];
        for i in 1..=N {
            for k in 0..N {
                pts[i][k] = best[k] + 0.5 * (pts[i][k] - best[k]);
            }
            vals[i] = f(&pts[i]);
        }
    }
    SimplexResult {
        x: pts[0],
        f: vals[0],
        iterations,
        converged,
    }
}

fn sort_vertices<const N: usize>(pts: &mut [[f64; N]], vals: &mut [f64]) {
    // Insertion sort; stable so ties keep their order and runs stay deterministic.
    for i in 1..vals.len() {
        let mut j = i;
        while j > 0 && vals[j] < vals[j - 1] {
            vals.swap(j, j - 1);
            pts.swap(j, j - 1);
            j -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let r = nelder_mead(
            |x: &[f64; 2]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2),
            [0.0, 0.0],
            &SimplexSettings {
                initial_step: 0.5,
                f_tol: 1e-20,
                ..Default::default()
            },
        );
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] + 2.0).abs() < 1e-6);
    }

    #[test]
    fn rosenbrock() {
        let r = nelder_mead(
            |x: &[f64; 2]| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
            [-1.2, 1.0],
            &SimplexSettings {
                max_iters: 2000,
                f_tol: 1e-24,
                x_tol: 1e-14,
                initial_step: 0.1,
            },
        );
        assert!((r.x[0] - 1.0).abs() < 1e-5 && (r.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn nonsmooth_max() {
        let r = nelder_mead(
            |x: &[f64; 2]| (x[0] - 0.3).abs().max((x[1] + 0.1).abs()),
            [0.0, 0.03],
            &SimplexSettings {
                f_tol: 1e-14,
                ..Default::default()
            },
        );
        assert!(r.f < 1e-6, "{r:?}");
    }

    #[test]
    fn flat_simplex_stops_immediately() {
        let r = nelder_mead(
            |x: &[f64; 2]| x[0].abs().max(x[1].abs()).max(1.0),
            [0.0, 0.0],
            &SimplexSettings::default(),
        );
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn never_worse_than_start() {
        let f = |x: &[f64; 1]| (x[0] * 3.0).sin() + 0.1 * x[0] * x[0];
        let r = nelder_mead(f, [2.0], &SimplexSettings::default());
        assert!(r.f <= f(&[2.0]));
    }

    #[test]
    fn deterministic() {
        let f = |x: &[f64; 2]| (x[0] - 0.7).abs() + (x[1] * x[0]).cos();
        let a = nelder_mead(f, [0.1, 0.2], &SimplexSettings::default());
        let b = nelder_mead(f, [0.1, 0.2], &SimplexSettings::default());
        assert_eq!(a, b);
    }
}
