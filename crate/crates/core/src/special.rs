//! Special functions.

use core::f64::consts::PI;

/// Below this magnitude `sinc` switches to its Taylor series.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-4;

/// Normalized sinc, `sin(πx)/(πx)`, with `sinc(0) = 1`.
///
/// Near zero a four-term Taylor series is used so the function is smooth
/// through the removable singularity.
pub fn sinc(x: f64) -> f64 {
    if libm::fabs(x) < SINC_SERIES_THRESHOLD {
        let y = PI * x;
        let y2 = y * y;
        1.0 - y2 / 6.0 * (1.0 - y2 / 20.0 * (1.0 - y2 / 42.0))
    } else {
        let y = PI * x;
        libm::sin(y) / y
    }
}

/// Truncated sinc: `sinc(s)` on `[0, 1]`, zero beyond. Evaluated at `|s|`.
pub fn truncated_sinc(s: f64) -> f64 {
    let s = libm::fabs(s);
    if s < 1.0 {
        sinc(s)
    } else {
        0.0
    }
}

/// Standard normal density.
pub fn std_normal_pdf(s: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * libm::exp(-0.5 * s * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(1.0).abs() < 1e-16);
        assert!((sinc(0.5) - 2.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn series_branch_is_continuous() {
        let t = SINC_SERIES_THRESHOLD;
        let below = sinc(t * (1.0 - 1e-12));
        let above = sinc(t * (1.0 + 1e-12));
        assert!((below - above).abs() < 1e-15);
        // Series against the direct formula slightly inside the threshold.
        let x = 0.9e-4;
        let direct = (PI * x).sin() / (PI * x);
        assert!((sinc(x) - direct).abs() < 1e-15);
    }

    #[test]
    fn sinc_is_even() {
        for x in [1e-6, 0.3, 2.7, 15.0] {
            assert_eq!(sinc(x), sinc(-x));
        }
    }

    #[test]
    fn truncation() {
        assert_eq!(truncated_sinc(1.0), 0.0);
        assert_eq!(truncated_sinc(3.0), 0.0);
        assert_eq!(truncated_sinc(-0.5), sinc(0.5));
    }
}
