use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest dimension accepted by [`DenseMatrix`] constructors and the eigensolver.
pub const DIMENSION_CAP: usize = 2048;

/// Square complex matrix stored row-major. Entries are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn from_row_major(n: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dimension(n)?;
        if entries.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { at: pos as f64 });
        }
        Ok(Self { n, entries })
    }

    pub fn from_real_row_major(n: usize, entries: &[f64]) -> Result<Self> {
        Self::from_row_major(n, entries.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Builds the matrix from an entry function, rows assembled in parallel.
    pub fn from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Complex64 + Sync,
    {
        check_dimension(n)?;
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        entries.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
            for (k, slot) in row.iter_mut().enumerate() {
                *slot = f(j, k);
            }
        });
        Self::from_row_major(n, entries)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |j, k| Complex64::new(if j == k { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|j| self.get(j, j)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute row sum (the induced ∞-norm).
    pub fn inf_norm(&self) -> f64 {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix dimension must be at least 1".into()));
    }
    if n > DIMENSION_CAP {
        return Err(Error::DimensionCap { n, cap: DIMENSION_CAP });
    }
    Ok(())
}
