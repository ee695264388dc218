//! Spectra of harmonic layer potentials on three-dimensional wedges.
//!
//! The boundary of a wedge of opening angle `α` is two half-planes glued
//! along an edge. On it the double layer operator `K_α` and the single layer
//! operator `S_α` are dilation–translation convolutions over the `ax+b`
//! group, and after a partial Fourier transform along the edge they reduce
//! to Mellin convolutions with an explicit symbol. This crate evaluates all
//! of those objects numerically:
//!
//! * [`numerics`]: adaptive quadrature, `K₁`, dense eigenvalues;
//! * [`group`]: the `ax+b` group, Haar structure, convolution and Plancherel transforms;
//! * [`symbols`]: the Mellin symbol, the spectral curve `Σ_{α,a}`, winding numbers and norms;
//! * [`wedge_operators`]: kernels, direct application of `K_α` and `S_α`, finite sections;
//! * [`transmission`]: well-posedness of the two transmission problems;
//! * [`validation`]: the numerical cross-checks behind `wedge-spectra validate`.

pub mod cli;
pub mod error;
pub mod group;
pub mod numerics;
pub mod symbols;
pub mod transmission;
pub mod validation;
pub mod wedge_operators;

pub use error::{Error, Result};
