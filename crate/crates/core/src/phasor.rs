//! Complex amplitudes of single-frequency fields.
//!
//! A phasor `U` represents the real signal `u(t) = Im(U e^{iωt})`, so
//! `A sin(ωt + ψ)` is encoded as `A e^{iψ}` and the oscillation amplitude
//! `max_t |u(t)|` is simply `|U|`.

use core::iter::Sum;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Complex amplitude of a sinusoid at the common driving frequency.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Phasor {
    /// Real part.
    pub re: f64,
    /// Imaginary part.
    pub im: f64,
}

impl Phasor {
    /// The zero field.
    pub const ZERO: Phasor = Phasor { re: 0.0, im: 0.0 };

    /// Construct from rectangular parts.
    pub const fn new(re: f64, im: f64) -> Self {
        Phasor { re, im }
    }

    /// Encode `amplitude · sin(ωt + phase)`.
    pub fn from_sinusoid(amplitude: f64, phase: f64) -> Self {
        let (s, c) = libm::sincos(phase);
        Phasor::new(amplitude * c, amplitude * s)
    }

    /// Oscillation amplitude, `max_t |u(t)|`.
    pub fn amplitude(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// Phase `ψ` in `(-π, π]` such that `u(t) = |U| sin(ωt + ψ)`.
    pub fn phase(self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    /// Time-domain value `Im(U e^{iωt})`.
    pub fn value_at(self, omega: f64, t: f64) -> f64 {
        let (s, c) = libm::sincos(omega * t);
        self.re * s + self.im * c
    }

    /// Multiply by `e^{iθ}` (delay or advance the signal in phase).
    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = libm::sincos(theta);
        Phasor::new(self.re * c - self.im * s, self.re * s + self.im * c)
    }

    /// Complex product.
    pub fn mul_phasor(self, o: Phasor) -> Self {
        Phasor::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Add for Phasor {
    type Output = Phasor;
    fn add(self, o: Phasor) -> Phasor {
        Phasor::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for Phasor {
    fn add_assign(&mut self, o: Phasor) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl Sub for Phasor {
    type Output = Phasor;
    fn sub(self, o: Phasor) -> Phasor {
        Phasor::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Phasor {
    type Output = Phasor;
    fn neg(self) -> Phasor {
        Phasor::new(-self.re, -self.im)
    }
}

impl Mul<f64> for Phasor {
    type Output = Phasor;
    fn mul(self, s: f64) -> Phasor {
        Phasor::new(self.re * s, self.im * s)
    }
}

impl Sum for Phasor {
    fn sum<I: Iterator<Item = Phasor>>(iter: I) -> Phasor {
        iter.fold(Phasor::ZERO, |a, b| a + b)
    }
}

/// Reduce an angle to `(-π, π]`.
pub fn wrap_phase(angle: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    let mut a = libm::remainder(angle, TAU);
    if a <= -PI {
        a += TAU;
    }
    if a > PI {
        a -= TAU;
    }
    a
}
