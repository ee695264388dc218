//! Quadrature, special functions and dense eigenvalues.

pub mod bessel;
pub mod eigen;
pub mod matrix;
pub mod oscillatory;
pub mod quadrature;

pub use bessel::{bessel_k1, bessel_k1_asymptotic, bessel_k1_scaled};
pub use eigen::{eigenvalues, eigenvalues_sorted};
pub use matrix::{DenseMatrix, DIMENSION_CAP};
pub use oscillatory::{fourier_half_line, Trig};
pub use quadrature::{
    integrate, integrate_2d, integrate_breaks, integrate_haar_positive, integrate_try, Domain, Estimate, QuadValue,
    QuadratureRule,
};
