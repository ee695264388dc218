//! Finite sections of the Mellin-type operators on a logarithmic grid and
//! how their eigenvalues sit relative to the predicted spectrum.

use num_complex::Complex64;
use rayon::prelude::*;

use super::kernels::t_kernel;
use crate::error::{Error, Result};
use crate::numerics::DenseMatrix;
use crate::symbols::{mellin_kernel, SpectrumRegion, WedgeParams};

fn check_size(n: usize, step: f64, name: &str) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "section size n must be at least 2, got {n}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {step}")));
    }
    Ok(())
}

/// `M_{jk} = h · i_{α,a}(e^{−(j−k)h})`, the truncated Mellin convolution on
/// `(0, 1)` sampled at `u_j = −jh`.
pub fn toeplitz_section(p: &WedgeParams, n: usize, h: f64) -> Result<DenseMatrix> {
    check_size(n, h, "step h")?;
    let diag: Vec<f64> = (0..2 * n - 1)
        .map(|d| h * mellin_kernel(p, (-(d as f64 - (n as f64 - 1.0)) * h).exp()))
        .collect();
    DenseMatrix::from_fn(n, |j, k| Complex64::new(diag[j + n - 1 - k], 0.0))
}

/// Nyström matrix of the Bessel-kernel operator on `L²(ℝ₊, dr/r)`:
/// nodes `u_j` uniform on `[−L, L]`, `h = 2L/(n − 1)`,
/// `M_{jk} = h · t_kernel(e^{u_j}, e^{u_k})`.
pub fn nystrom_t(p: &WedgeParams, n: usize, half_width: f64) -> Result<DenseMatrix> {
    check_size(n, half_width, "half-width L")?;
    let h = 2.0 * half_width / (n - 1) as f64;
    let nodes: Vec<f64> = (0..n).map(|j| (-half_width + j as f64 * h).exp()).collect();
    let rows: Vec<Vec<f64>> = nodes
        .par_iter()
        .map(|&r| {
            nodes
                .iter()
                .map(|&x| t_kernel(p, r, x).map(|t| h * t))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    DenseMatrix::from_fn(n, |j, k| Complex64::new(rows[j][k], 0.0))
}

/// How an eigenvalue cloud sits relative to `Σ̂_{α,a}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Containment {
    pub tolerance: f64,
    /// Fraction of eigenvalues within `tolerance` of `Σ̂`.
    pub fraction_inside: f64,
    /// Largest distance from an eigenvalue to `Σ̂` (zero inside).
    pub max_distance: f64,
    pub spectral_radius: f64,
    pub count: usize,
}

/// Containment statistics of `eigenvalues` against the region `Σ̂`.
pub fn containment(eigenvalues: &[Complex64], region: &SpectrumRegion, tolerance: f64) -> Result<Containment> {
    if !(tolerance >= 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "containment tolerance must be non-negative, got {tolerance}"
        )));
    }
    let distances: Vec<f64> = eigenvalues
        .par_iter()
        .map(|&l| region.distance(l))
        .collect::<Result<Vec<_>>>()?;
    let inside = distances.iter().filter(|&&d| d <= tolerance).count();
    let count = eigenvalues.len();
    Ok(Containment {
        tolerance,
        fraction_inside: if count == 0 { 1.0 } else { inside as f64 / count as f64 },
        max_distance: distances.iter().copied().fold(0.0, f64::max),
        spectral_radius: eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max),
        count,
    })
}
