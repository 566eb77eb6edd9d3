//! Closed-form solutions of `u_tt = c²∇²u + σ(r) sin(ωt)` for spherically
//! symmetric profiles.
//!
//! In the quasi-steady region every solution has the form
//! `u(r, t) = C · (1/r) · sin(ω(t − r/c))`; the functions `qss_coeff_*` return
//! `C` for a unit-amplitude profile. For the truncated-sinc profile the full
//! transient solution is also available via [`exact_field_sinc`].

use core::f64::consts::PI;

use crate::error::{check_positive, Error, Result};
use crate::geometry::Vec3;
use crate::phasor::Phasor;
use crate::special::sinc;
use crate::types::{Medium, PointForce, SourceKind, SourceSpec};

/// Default guard radius for `1/r` evaluations (m).
pub const RHO_MIN: f64 = 1e-9;

/// Quasi-steady region `{(r, t) : r > R, ct − R > r}` of a forcing core of radius `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QssRegion {
    /// Effective forcing-core radius.
    pub r_eff: f64,
}

impl QssRegion {
    /// Region for a core of radius `r_eff`.
    pub fn new(r_eff: f64) -> Self {
        QssRegion { r_eff }
    }

    /// Region for a source, using [`SourceSpec::effective_radius`].
    pub fn for_source(source: &SourceSpec) -> Self {
        QssRegion::new(source.effective_radius())
    }

    /// Whether `(r, t)` lies strictly inside the region.
    pub fn contains(&self, r: f64, t: f64, m: &Medium) -> bool {
        r > self.r_eff && m.c() * t - self.r_eff > r
    }
}

/// `C` for `σ(r) = sinc(r/d)/d³` truncated at `d`.
///
/// `C = (1/π²c²)[sinc(2d/λ) + ½ sinc(2d/λ + 1) + ½ sinc(2d/λ − 1)]`.
pub fn qss_coeff_sinc(d: f64, m: &Medium) -> f64 {
    let c = m.c();
    let x = 2.0 * d / m.wavelength();
    (sinc(x) + 0.5 * sinc(x + 1.0) + 0.5 * sinc(x - 1.0)) / (PI * PI * c * c)
}

/// `C` for the Gaussian profile `σ(r) = ρ(r/d)/d³`: `(1/2c²) e^{−2π²d²/λ²}`.
pub fn qss_coeff_gaussian(d: f64, m: &Medium) -> f64 {
    let c = m.c();
    let kd = m.wavenumber() * d;
    libm::exp(-0.5 * kd * kd) / (2.0 * c * c)
}

/// `C` for the thin shell `σ(r) = δ(r − r₀)`: `(r₀λ/2πc²) sin(2πr₀/λ)`.
pub fn qss_coeff_shell(r0: f64, m: &Medium) -> f64 {
    let c = m.c();
    let lambda = m.wavelength();
    r0 * lambda / (2.0 * PI * c * c) * libm::sin(2.0 * PI * r0 / lambda)
}

/// `C` for the point force `σ = δ(x)`: `1/(4πc²)`.
pub fn qss_coeff_point(m: &Medium) -> f64 {
    let c = m.c();
    1.0 / (4.0 * PI * c * c)
}

/// Unit-amplitude coefficient for any source kind.
pub fn qss_coeff(kind: SourceKind, scale: f64, m: &Medium) -> f64 {
    match kind {
        SourceKind::Gaussian => qss_coeff_gaussian(scale, m),
        SourceKind::TruncatedSinc => qss_coeff_sinc(scale, m),
        SourceKind::Point => qss_coeff_point(m),
        SourceKind::Shell => qss_coeff_shell(scale, m),
    }
}

/// Quasi-steady field `C/r · sin(ω(t − r/c))`.
pub fn qss_field(coeff: f64, r: f64, t: f64, m: &Medium) -> f64 {
    coeff / r * libm::sin(m.omega() * (t - r / m.c()))
}

/// Phasor of an outgoing spherical wave `(A/r) sin(ωt + ψ − ωr/c)`.
pub fn spherical_wave(amplitude: f64, phase: f64, r: f64, m: &Medium) -> Phasor {
    Phasor::from_sinusoid(amplitude / r, phase - m.wavenumber() * r)
}

pub(crate) fn guarded_distance(x: Vec3, origin: Vec3, rho_min: f64) -> Result<f64> {
    let rho = x.distance(origin);
    if rho < rho_min {
        Err(Error::SingularEvaluation { distance: rho })
    } else {
        Ok(rho)
    }
}

/// Quasi-steady phasor of a point force at `x`.
///
/// `U = (a_m/4πc²)(1/ρ) e^{i(φ_m − ωρ/c)}` with `ρ = |x − x_m|`.
pub fn point_force_phasor(f: &PointForce, x: Vec3, m: &Medium) -> Result<Phasor> {
    point_force_phasor_guarded(f, x, m, RHO_MIN)
}

/// [`point_force_phasor`] with an explicit singularity guard.
pub fn point_force_phasor_guarded(f: &PointForce, x: Vec3, m: &Medium, rho_min: f64) -> Result<Phasor> {
    let rho = guarded_distance(x, f.location, rho_min)?;
    Ok(spherical_wave(f.amplitude * qss_coeff_point(m), f.phase, rho, m))
}

/// Quasi-steady phasor of any spherically symmetric source at `x`.
///
/// Valid outside the source's forcing core once the start-up wave has passed.
pub fn source_phasor(s: &SourceSpec, x: Vec3, m: &Medium) -> Result<Phasor> {
    let r = guarded_distance(x, s.center, RHO_MIN)?;
    let coeff = qss_coeff(s.kind, s.scale, m);
    Ok(spherical_wave(s.amplitude * coeff, s.phase, r, m))
}

/// Quasi-steady phasor of a Gaussian source, `ã_s (1/r) e^{i(ψ − ωr/c)}`.
pub fn gaussian_source_phasor(s: &SourceSpec, x: Vec3, m: &Medium) -> Result<Phasor> {
    if s.kind != SourceKind::Gaussian {
        return Err(Error::UnsupportedSource("expected a Gaussian profile"));
    }
    source_phasor(s, x, m)
}

/// Exact solution for `σ(r) = sinc(r/d)/d³` (truncated at `d`) and
/// `f(t) = sin(ωt)` started at `t = 0`, valid for all `r > 0`, `t ≥ 0`.
///
/// Sum of the outgoing part over `[t_b, t_e]` and the incoming part over
/// `[0, t_2]`, each integrated in closed form.
pub fn exact_field_sinc(r: f64, t: f64, d: f64, m: &Medium) -> Result<f64> {
    check_positive("d", d)?;
    if r < RHO_MIN {
        return Err(Error::SingularEvaluation { distance: r });
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter { name: "t", value: t });
    }
    let c = m.c();
    let w = m.omega();
    let kc = PI * c / d;
    let pref = 1.0 / (2.0 * PI * PI * c * d * r);

    let t_b = t.min(((r - d) / c).max(0.0));
    let t_e = t.min((r + d) / c);
    let half = 0.5 * (t_e - t_b);
    let mid = 0.5 * (t_b + t_e);
    let a = w * (t - mid);
    let b = PI / d * (r - c * mid);
    let u_out = pref
        * (t_e - t_b)
        * (sinc(w / PI * half) * libm::sin(a)
            + 0.5 * sinc((w + kc) / PI * half) * libm::sin(a + b)
            + 0.5 * sinc((w - kc) / PI * half) * libm::sin(a - b));

    let t_2 = t.min(((d - r) / c).max(0.0));
    let u_in = if t_2 > 0.0 {
        let half = 0.5 * t_2;
        let a = w * (t - half);
        let b = PI / d * (r + c * half);
        -pref
            * t_2
            * (sinc(w / PI * half) * libm::sin(a)
                + 0.5 * sinc((w - kc) / PI * half) * libm::sin(a + b)
                + 0.5 * sinc((w + kc) / PI * half) * libm::sin(a - b))
    } else {
        0.0
    };
    Ok(u_out + u_in)
}

/// Central-difference residual of the radial wave operator,
/// `u_tt − c²(u_rr + 2u_r/r)`, with spatial step `h` and time step `h/(2c)`.
pub fn radial_wave_residual<F: Fn(f64, f64) -> f64>(u: F, r: f64, t: f64, h: f64, m: &Medium) -> f64 {
    let c = m.c();
    let dt = 0.5 * h / c;
    let u0 = u(r, t);
    let utt = (u(r, t + dt) - 2.0 * u0 + u(r, t - dt)) / (dt * dt);
    let up = u(r + h, t);
    let um = u(r - h, t);
    let urr = (up - 2.0 * u0 + um) / (h * h);
    let ur = (up - um) / (2.0 * h);
    utt - c * c * (urr + 2.0 * ur / r)
}
