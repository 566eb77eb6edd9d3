//! Target profiles for kernel fitting: CSV samples or a built-in.

use std::path::Path;

use acmask_core::kernel::grid_points;
use acmask_core::special::std_normal_pdf;
use acmask_core::Vec3;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Deserialize)]
struct Row {
    x: f64,
    y: f64,
    z: f64,
    p: f64,
}

/// Samples `(x, p(x))` read from a CSV with header `x,y,z,p`.
pub fn read_csv(path: &Path) -> CliResult<Vec<(Vec3, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read profile {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, rec) in rdr.deserialize::<Row>().enumerate() {
        let r = rec.map_err(|e| CliError::Usage(format!("profile row {}: {e}", i + 1)))?;
        if ![r.x, r.y, r.z, r.p].iter().all(|v| v.is_finite()) {
            return Err(CliError::Usage(format!("profile row {}: non-finite value", i + 1)));
        }
        out.push((Vec3::new(r.x, r.y, r.z), r.p));
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("profile {} has no rows", path.display())));
    }
    Ok(out)
}

/// Gaussian source profile `a_s ρ(|x|/d)/d³` sampled on a cubic grid of
/// half-width `half` and spacing `spacing`.
pub fn gaussian_samples(a_s: f64, d: f64, half: f64, spacing: f64) -> CliResult<Vec<(Vec3, f64)>> {
    let lo = Vec3::new(-half, -half, -half);
    let hi = Vec3::new(half, half, half);
    Ok(grid_points(lo, hi, spacing)?
        .into_iter()
        .map(|x| (x, a_s * std_normal_pdf(x.norm() / d) / (d * d * d)))
        .collect())
}
