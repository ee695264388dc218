//! Direct application of the double and single layer operators to boundary
//! densities by quadrature, and the quadratic forms built from them.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::density::{BoundaryDensity, Sheet};
use super::kernels::{double_layer_kernel, single_layer_kernel};
use crate::error::{Error, Result};
use crate::numerics::{integrate_2d, Domain, Estimate, QuadratureRule};
use crate::symbols::WedgeParams;

fn check_point(x: f64, z: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) || !z.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evaluation point needs finite x > 0 and finite z, got ({x}, {z})"
        )));
    }
    Ok(())
}

/// `∬ g(u, v) k(x, z; u, v) du dv`: one off-diagonal block of `K_α`.
pub fn double_layer_block(p: &WedgeParams, g: &Sheet, x: f64, z: f64, rule: &QuadratureRule) -> Result<Complex64> {
    g.integrate_against(|u, v| Ok(Complex64::new(double_layer_kernel(p, x, z, u, v), 0.0)), rule)?
        .require_converged()
}

/// `K_α f` at `(x, z)` on both sheets: `(K f₂, K f₁)`.
pub fn apply_k(p: &WedgeParams, f: &BoundaryDensity, at: (f64, f64), rule: &QuadratureRule) -> Result<[Complex64; 2]> {
    check_point(at.0, at.1)?;
    Ok([
        double_layer_block(p, f.sheet(1), at.0, at.1, rule)?,
        double_layer_block(p, f.sheet(0), at.0, at.1, rule)?,
    ])
}

/// Cross-sheet single layer block `∬ g(u, v) / (4π |X − Y|) du dv` with the
/// sheets at angle `α`. The kernel is bounded for `α ≠ 0`.
pub fn single_layer_cross(p: &WedgeParams, g: &Sheet, x: f64, z: f64, rule: &QuadratureRule) -> Result<Complex64> {
    let alpha = p.alpha();
    g.integrate_against(
        |u, v| Ok(Complex64::new(single_layer_kernel(alpha, x, z, u, v), 0.0)),
        rule,
    )?
    .require_converged()
}

/// Same-sheet single layer `∬ g(u, v) / (4π |(x, z) − (u, v)|) du dv`.
///
/// Evaluated in polar coordinates around `(x, z)`, where the area element
/// `ρ dρ dθ` cancels the `1/ρ` singularity. The angular range is split at
/// the directions of the support-box corners so the radial limits are
/// smooth on every piece.
pub fn single_layer_diagonal(g: &Sheet, x: f64, z: f64, rule: &QuadratureRule) -> Result<Complex64> {
    let Some((bx, bz)) = g.bounding_box() else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let mut breaks = vec![0.0, 2.0 * PI];
    for cx in [bx.0, bx.1] {
        for cz in [bz.0, bz.1] {
            let mut t = (cz - z).atan2(cx - x);
            if t < 0.0 {
                t += 2.0 * PI;
            }
            breaks.push(t);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    let radial = |theta: f64| -> Domain {
        let (s, c) = theta.sin_cos();
        let mut lo: f64 = 0.0;
        let mut hi = f64::INFINITY;
        for (pos, dir, range) in [(x, c, bx), (z, s, bz)] {
            if dir.abs() < 1e-300 {
                if pos < range.0 || pos > range.1 {
                    return Domain::Interval(0.0, 0.0);
                }
            } else {
                let t1 = (range.0 - pos) / dir;
                let t2 = (range.1 - pos) / dir;
                lo = lo.max(t1.min(t2));
                hi = hi.min(t1.max(t2));
            }
        }
        if hi > lo {
            Domain::Interval(lo, hi)
        } else {
            Domain::Interval(0.0, 0.0)
        }
    };
    let mut total = Complex64::new(0.0, 0.0);
    let pieces = (breaks.len() - 1) as f64;
    for w in breaks.windows(2) {
        if w[1] - w[0] < 1e-14 {
            continue;
        }
        let est = integrate_2d(
            |theta, rho| {
                let (s, c) = theta.sin_cos();
                Ok(g.eval(x + rho * c, z + rho * s) / (4.0 * PI))
            },
            Domain::Interval(w[0], w[1]),
            radial,
            &rule.scaled(1.0 / pieces),
        )?;
        total += est.require_converged()?;
    }
    Ok(total)
}

/// `S_α f` at `(x, z)` on both sheets: `(S₀f₁ + S_αf₂, S_αf₁ + S₀f₂)`.
///
/// Densities with unbounded support must be flagged mean-zero, which is what
/// makes the single layer potential decay.
pub fn apply_s(p: &WedgeParams, f: &BoundaryDensity, at: (f64, f64), rule: &QuadratureRule) -> Result<[Complex64; 2]> {
    check_point(at.0, at.1)?;
    if !f.is_compact() && !f.is_mean_zero() {
        return Err(Error::Precondition(
            "single layer needs a compactly supported or mean-zero density".into(),
        ));
    }
    let (x, z) = at;
    let (f1, f2) = (f.sheet(0), f.sheet(1));
    Ok([
        single_layer_diagonal(f1, x, z, rule)? + single_layer_cross(p, f2, x, z, rule)?,
        single_layer_cross(p, f1, x, z, rule)? + single_layer_diagonal(f2, x, z, rule)?,
    ])
}

/// `Σᵢ ∬ Fᵢ(x, z) x^a dx dz` over both full sheets, in `(log x, z)`.
fn integrate_over_sheets<F>(integrand: F, a: f64, rule: &QuadratureRule) -> Result<Estimate<Complex64>>
where
    F: Fn(f64, f64) -> Result<Complex64>,
{
    integrate_2d(
        |rho, z| {
            let x = rho.exp();
            Ok(integrand(x, z)? * x.powf(a + 1.0))
        },
        Domain::ExpTails { core: (-3.0, 3.0) },
        |_| Domain::RealLine,
        rule,
    )
}

/// `‖K_α f‖²_{L^{2,a}}` with the outer integral at `rule` and each
/// application of `K_α` at a tenth of it.
pub fn k_image_weighted_norm_sq(p: &WedgeParams, f: &BoundaryDensity, rule: &QuadratureRule) -> Result<Estimate<f64>> {
    let inner = rule.scaled(0.1);
    let est = integrate_over_sheets(
        |x, z| {
            let [k1, k2] = apply_k(p, f, (x, z), &inner)?;
            Ok(Complex64::new(k1.norm_sqr() + k2.norm_sqr(), 0.0))
        },
        f.a(),
        rule,
    )?;
    Ok(Estimate {
        value: est.value.re,
        error: est.error,
        evaluations: est.evaluations,
        converged: est.converged,
    })
}

/// Outcome of the Plemelj check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlemeljResidual {
    /// `⟨Kf, Sg⟩ − ⟨Sf, Kg⟩` in `L²(Γ)`.
    pub difference: Complex64,
    /// `‖f‖·‖g‖` in `L²(Γ)`.
    pub normalization: f64,
    /// `|difference| / normalization`.
    pub residual: f64,
    /// Quadrature error estimate of `difference`, normalized the same way.
    pub error: f64,
}

/// Normalized defect `|⟨K f, S g⟩ − ⟨S f, K g⟩| / (‖f‖ ‖g‖)` of the identity
/// `S K = K* S`, for compactly supported mean-zero densities.
pub fn plemelj_residual(
    p: &WedgeParams,
    f: &BoundaryDensity,
    g: &BoundaryDensity,
    rule: &QuadratureRule,
) -> Result<PlemeljResidual> {
    for d in [f, g] {
        if !d.is_compact() || !d.is_mean_zero() {
            return Err(Error::Precondition(
                "Plemelj check needs compactly supported mean-zero densities".into(),
            ));
        }
    }
    let inner = rule.scaled(0.1);
    let est = integrate_over_sheets(
        |x, z| {
            let kf = apply_k(p, f, (x, z), &inner)?;
            let sg = apply_s(p, g, (x, z), &inner)?;
            let sf = apply_s(p, f, (x, z), &inner)?;
            let kg = apply_k(p, g, (x, z), &inner)?;
            Ok((0..2).map(|i| kf[i] * sg[i].conj() - sf[i] * kg[i].conj()).sum())
        },
        0.0,
        rule,
    )?;
    let normalization = f.l2_norm(rule)? * g.l2_norm(rule)?;
    if normalization == 0.0 {
        return Ok(PlemeljResidual {
            difference: est.value,
            normalization,
            residual: 0.0,
            error: 0.0,
        });
    }
    Ok(PlemeljResidual {
        difference: est.value,
        normalization,
        residual: est.value.norm() / normalization,
        error: est.error / normalization,
    })
}

/// Energy `⟨S f, f⟩ = Σᵢ ∬ (S f)ᵢ f̄ᵢ dx dz`, positive for nonzero mean-zero `f`.
pub fn single_layer_energy(p: &WedgeParams, f: &BoundaryDensity, rule: &QuadratureRule) -> Result<Complex64> {
    let inner = rule.scaled(0.1);
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        let sheet = f.sheet(i);
        let est = sheet.integrate_over_support(
            |x, z| Ok(apply_s(p, f, (x, z), &inner)?[i] * sheet.eval(x, z).conj()),
            rule,
        )?;
        total += est.require_converged()?;
    }
    Ok(total)
}
