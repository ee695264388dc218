//! Explicit kernels of the wedge layer potentials.
//!
//! In the coordinates `(x, z)` on each sheet (distance to the edge, position
//! along it) the sheets are `{(x cos α, x sin α, z)}` and `{(x, 0, z)}`. The
//! double layer block couples the two sheets through
//! `k(x, z; u, v) = −(1/2π) u sin α (x² − 2xu cos α + u² + (z − v)²)^{−3/2}`, a
//! convolution over the `ax+b` group with kernel `k_α`. The Fourier transform
//! along the edge turns it into the Bessel kernel `T_α(r, x)`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;
use crate::group::{Evaluator, GroupFunction};
use crate::numerics::{bessel_k1, Estimate, QuadratureRule};
use crate::symbols::{mellin_kernel, WedgeParams};

/// `k_α(s, t) = −(sin α/2π)(1 + s² − 2s cos α + t²)^{−3/2}`.
pub fn k_alpha(p: &WedgeParams, s: f64, t: f64) -> f64 {
    let alpha = p.alpha();
    let base = (1.0 - s).powi(2) + 2.0 * s * (1.0 - alpha.cos()) + t * t;
    -(alpha.sin() / (2.0 * PI)) / (base * base.sqrt())
}

/// `s_β(s, t) = (1/4π)(1 + s² − 2s cos β + t²)^{−1/2}`; singular at `(1, 0)` for `β = 0`.
pub fn s_beta(beta: f64, s: f64, t: f64) -> f64 {
    let base = (1.0 - s).powi(2) + 2.0 * s * (1.0 - beta.cos()) + t * t;
    1.0 / (4.0 * PI * base.sqrt())
}

/// `A_α(r, x) = (1 + (x/r)² − 2(x/r) cos α)^{1/2}`, positive for `α ≠ 0`.
pub fn a_alpha(p: &WedgeParams, r: f64, x: f64) -> f64 {
    let s = x / r;
    ((1.0 - s).powi(2) + 2.0 * s * (1.0 - p.alpha().cos())).sqrt()
}

/// Weighted Bessel kernel `(x/r)^{(a+1)/2} · (−2 sin α) r A⁻¹ K₁(2πrA)`.
///
/// Both Fourier signs give the same kernel because `k_α` is even in `t`, so no
/// sign parameter is taken.
pub fn t_kernel(p: &WedgeParams, r: f64, x: f64) -> Result<f64> {
    let a = a_alpha(p, r, x);
    let weight = (x / r).powf(0.5 * (p.a() + 1.0));
    Ok(weight * (-2.0 * p.alpha().sin()) * r / a * bessel_k1(2.0 * PI * r * a)?)
}

/// Small-`r` limit of [`t_kernel`]: the dilation kernel `i_{α,a}(r/x)`.
pub fn i_kernel(p: &WedgeParams, r: f64, x: f64) -> f64 {
    mellin_kernel(p, r / x)
}

/// Double layer coupling kernel `k(x, z; u, v)` in sheet coordinates.
pub fn double_layer_kernel(p: &WedgeParams, x: f64, z: f64, u: f64, v: f64) -> f64 {
    let alpha = p.alpha();
    let d = x * x - 2.0 * x * u * alpha.cos() + u * u + (z - v).powi(2);
    -(1.0 / (2.0 * PI)) * u * alpha.sin() / (d * d.sqrt())
}

/// Kernel of the adjoint double layer block, `k(u, v; x, z)`.
pub fn adjoint_double_layer_kernel(p: &WedgeParams, x: f64, z: f64, u: f64, v: f64) -> f64 {
    double_layer_kernel(p, u, v, x, z)
}

/// Single layer kernel between points at relative angle `β`:
/// `1 / (4π (x² − 2xu cos β + u² + (z − v)²)^{1/2})`.
pub fn single_layer_kernel(beta: f64, x: f64, z: f64, u: f64, v: f64) -> f64 {
    let d = x * x - 2.0 * x * u * beta.cos() + u * u + (z - v).powi(2);
    1.0 / (4.0 * PI * d.sqrt())
}

/// `k_α` as a function on the group, with its closed-form partial Fourier
/// transform `k̂(s, η) = −(sin α/π)(2π|η|/A_s) K₁(2π|η| A_s)` where
/// `A_s² = 1 + s² − 2s cos α` (and `−(sin α/π)/A_s²` at `η = 0`).
pub fn wedge_kernel_function(p: &WedgeParams) -> GroupFunction {
    let q = *p;
    let eval: Evaluator = Arc::new(move |s, t| Ok(Complex64::new(k_alpha(&q, s, t), 0.0)));
    let alpha = p.alpha();
    let hat: Evaluator = Arc::new(move |s, eta| {
        let a2 = (1.0 - s).powi(2) + 2.0 * s * (1.0 - alpha.cos());
        let a = a2.sqrt();
        let c = -alpha.sin() / PI;
        let w = 2.0 * PI * eta.abs();
        let v = if w * a < 1e-300 {
            c / a2
        } else {
            c * (w / a) * bessel_k1(w * a)?
        };
        Ok(Complex64::new(v, 0.0))
    });
    GroupFunction::kernel(eval, Some(hat))
}

/// `Δ^{−(a+1)/2} k_α = x^{(a+1)/2} k_α`, the kernel realising `K_α` on the
/// weighted space as a convolution on `L²(G)`.
pub fn weighted_wedge_kernel(p: &WedgeParams) -> Result<GroupFunction> {
    wedge_kernel_function(p).weighted(0.5 * (p.a() + 1.0))
}

/// `‖Δ^{−(a+1)/2} k_α‖_{L¹(G)}` by two-dimensional quadrature.
pub fn weighted_l1_norm(p: &WedgeParams, rule: &QuadratureRule) -> Result<Estimate<f64>> {
    weighted_wedge_kernel(p)?.l1_norm(rule)
}
