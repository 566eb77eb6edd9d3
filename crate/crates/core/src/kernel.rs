//! Kernel superposition for forcing profiles without spherical symmetry.
//!
//! A profile `p(x)` is approximated by `Σ a_j ψ(x; x_j, d)` with
//! `ψ(x; x₀, d) = h(|x − x₀|/d)/(Z_h d³)`. Each kernel has a closed-form
//! quasi-steady field, so the field of `p` is the phasor sum of kernel fields
//! weighted by `a_j/Z_h`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::analytic::{guarded_distance, qss_coeff_gaussian, qss_coeff_sinc, spherical_wave, RHO_MIN};
use crate::error::{check_positive, Error, Result};
use crate::geometry::Vec3;
use crate::linalg::{Cholesky, SymMatrix};
use crate::phasor::Phasor;
use crate::quad::adaptive_simpson;
use crate::special::{std_normal_pdf, truncated_sinc};

/// Normal-matrix condition estimate above which a fit is flagged.
pub const ILL_CONDITIONED: f64 = 1e12;

/// Default ridge, relative to the largest diagonal entry of the normal matrix.
pub const DEFAULT_RIDGE: f64 = 1e-10;

/// Radial shape `h(s)` of a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelShape {
    /// Standard normal density.
    Gaussian,
    /// `sinc(s)` on `[0, 1]`, zero beyond.
    TruncatedSinc,
}

impl KernelShape {
    /// `h(s)`.
    pub fn profile(self, s: f64) -> f64 {
        match self {
            KernelShape::Gaussian => std_normal_pdf(s),
            KernelShape::TruncatedSinc => truncated_sinc(s),
        }
    }

    /// `Z_h = ∫₀^∞ 4πs²h(s) ds` in closed form.
    pub fn normalization(self) -> f64 {
        match self {
            KernelShape::Gaussian => 2.0 * PI,
            KernelShape::TruncatedSinc => 4.0 / PI,
        }
    }

    /// Radius (in units of `d`) beyond which `h` is treated as zero.
    /// Exact for the sinc kernel; for the Gaussian `h(8) < 1e-14·h(0)`.
    pub fn support(self) -> f64 {
        match self {
            KernelShape::Gaussian => 8.0,
            KernelShape::TruncatedSinc => 1.0,
        }
    }

    /// Far-field coefficient `C` of the unnormalized profile `h(r/d)/d³`.
    pub fn qss_coeff(self, d: f64, m: &crate::types::Medium) -> f64 {
        match self {
            KernelShape::Gaussian => qss_coeff_gaussian(d, m),
            KernelShape::TruncatedSinc => qss_coeff_sinc(d, m),
        }
    }
}

/// `∫₀^R 4πs²h(s) ds` by adaptive quadrature; `R = 40` for the Gaussian.
pub fn numeric_normalization(shape: KernelShape, tol: f64) -> f64 {
    let upper = match shape {
        KernelShape::Gaussian => 40.0,
        KernelShape::TruncatedSinc => 1.0,
    };
    adaptive_simpson(&|s: f64| 4.0 * PI * s * s * shape.profile(s), 0.0, upper, tol)
}

/// Kernels of one shape and width at a set of centers.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBasis {
    shape: KernelShape,
    width: f64,
    centers: Vec<Vec3>,
}

impl KernelBasis {
    /// Basis at explicit centers.
    pub fn new(shape: KernelShape, width: f64, centers: Vec<Vec3>) -> Result<Self> {
        check_positive("width", width)?;
        Ok(KernelBasis { shape, width, centers })
    }

    /// Centers on the grid `lower + spacing·(i, j, k)` inside the box
    /// `[lower, upper]`.
    pub fn grid(shape: KernelShape, width: f64, lower: Vec3, upper: Vec3, spacing: f64) -> Result<Self> {
        KernelBasis::new(shape, width, grid_points(lower, upper, spacing)?)
    }

    /// Kernel shape.
    pub fn shape(&self) -> KernelShape {
        self.shape
    }

    /// Kernel width `d`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Kernel centers.
    pub fn centers(&self) -> &[Vec3] {
        &self.centers
    }

    /// Number of kernels.
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    /// Whether the basis has no kernels.
    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// `ψ(x; x_j, d)`.
    pub fn kernel_value(&self, j: usize, x: Vec3) -> f64 {
        let d = self.width;
        self.shape.profile(x.distance(self.centers[j]) / d) / (self.shape.normalization() * d * d * d)
    }
}

/// Points `lower + spacing·(i, j, k)` that lie in `[lower, upper]`, with a
/// relative slack of `1e-9` spacings at the upper faces.
pub fn grid_points(lower: Vec3, upper: Vec3, spacing: f64) -> Result<Vec<Vec3>> {
    check_positive("spacing", spacing)?;
    let count = |lo: f64, hi: f64| -> Result<usize> {
        if !(hi >= lo) {
            return Err(Error::Geometry("box upper corner below lower corner"));
        }
        Ok(libm::floor((hi - lo) / spacing + 1e-9) as usize + 1)
    };
    let (nx, ny, nz) = (
        count(lower.x, upper.x)?,
        count(lower.y, upper.y)?,
        count(lower.z, upper.z)?,
    );
    let mut pts = Vec::with_capacity(nx * ny * nz);
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                pts.push(lower + Vec3::new(i as f64, j as f64, k as f64) * spacing);
            }
        }
    }
    Ok(pts)
}

/// Coefficients on a kernel basis.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelExpansion {
    basis: KernelBasis,
    coefficients: Vec<f64>,
}

impl KernelExpansion {
    /// Pair a basis with one coefficient per center.
    pub fn new(basis: KernelBasis, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coefficients.len(),
            });
        }
        Ok(KernelExpansion { basis, coefficients })
    }

    /// The basis.
    pub fn basis(&self) -> &KernelBasis {
        &self.basis
    }

    /// Coefficients `a_j`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// `Σ a_j ψ(x; x_j, d)`.
    pub fn profile_at(&self, x: Vec3) -> f64 {
        (0..self.basis.len())
            .map(|j| self.coefficients[j] * self.basis.kernel_value(j, x))
            .sum()
    }

    /// Quasi-steady phasor of the forcing `Σ a_j ψ_j(x) sin(ωt)` at `x`.
    ///
    /// Valid outside every kernel's core once the start-up wave has passed.
    pub fn synthesize_phasor(&self, x: Vec3, m: &crate::types::Medium) -> Result<Phasor> {
        let b = &self.basis;
        let unit = b.shape.qss_coeff(b.width, m) / b.shape.normalization();
        let mut u = Phasor::ZERO;
        for (c, &a) in b.centers.iter().zip(&self.coefficients) {
            let r = guarded_distance(x, *c, RHO_MIN)?;
            u += spherical_wave(a * unit, 0.0, r, m);
        }
        Ok(u)
    }
}

/// Solution of a kernel least-squares fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Fitted expansion.
    pub expansion: KernelExpansion,
    /// `‖p − Aa‖₂` over the samples.
    pub residual_norm: f64,
    /// `‖p − Aa‖₂ / ‖p‖₂`, or 0 when both vanish.
    pub relative_residual: f64,
    /// Condition estimate of the regularized normal matrix.
    pub condition_estimate: f64,
    /// Set when the condition estimate exceeds [`ILL_CONDITIONED`].
    pub ill_conditioned: bool,
    /// Ridge `μ` actually added to the diagonal.
    pub ridge: f64,
}

/// Kernel values at one sample: `(index, ψ_j(x))` for every kernel whose
/// support contains `x`.
fn active_kernels(basis: &KernelBasis, x: Vec3, out: &mut Vec<(usize, f64)>) {
    out.clear();
    let reach = basis.shape.support() * basis.width;
    for (j, c) in basis.centers.iter().enumerate() {
        let dx = x - *c;
        if libm::fabs(dx.x) < reach && libm::fabs(dx.y) < reach && libm::fabs(dx.z) < reach && dx.norm() < reach {
            out.push((j, basis.kernel_value(j, x)));
        }
    }
}

/// Least-squares fit of `p(x_i) ≈ Σ_j a_j ψ(x_i; x_j, d)` through the normal
/// equations with ridge `μ = relative_ridge · max diag(AᵀA)`.
pub fn fit_coefficients(samples: &[(Vec3, f64)], basis: KernelBasis, relative_ridge: f64) -> Result<FitResult> {
    let n = basis.len();
    if samples.len() < n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: samples.len(),
        });
    }
    if !(relative_ridge >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "ridge",
            value: relative_ridge,
        });
    }
    let mut normal = SymMatrix::zeros(n);
    let mut rhs = alloc::vec![0.0; n];
    let mut row = Vec::new();
    for &(x, p) in samples {
        active_kernels(&basis, x, &mut row);
        for (a, &(j, vj)) in row.iter().enumerate() {
            rhs[j] += vj * p;
            for &(k, vk) in &row[..=a] {
                if j >= k {
                    normal.add_lower(j, k, vj * vk);
                } else {
                    normal.add_lower(k, j, vj * vk);
                }
            }
        }
    }
    normal.mirror_lower();
    let ridge = relative_ridge * normal.max_diagonal();
    normal.add_diagonal(ridge);
    let chol = Cholesky::factor(&normal)?;
    let coefficients = chol.solve(&rhs)?;
    let condition_estimate = chol.condition_estimate();

    let expansion = KernelExpansion::new(basis, coefficients)?;
    let (mut err2, mut norm2) = (0.0, 0.0);
    for &(x, p) in samples {
        active_kernels(&expansion.basis, x, &mut row);
        let fit: f64 = row.iter().map(|&(j, v)| expansion.coefficients[j] * v).sum();
        err2 += (p - fit) * (p - fit);
        norm2 += p * p;
    }
    let residual_norm = libm::sqrt(err2);
    let relative_residual = if norm2 > 0.0 {
        residual_norm / libm::sqrt(norm2)
    } else {
        residual_norm
    };
    Ok(FitResult {
        expansion,
        residual_norm,
        relative_residual,
        condition_estimate,
        ill_conditioned: condition_estimate > ILL_CONDITIONED,
        ridge,
    })
}
