use std::sync::Arc;

use num_complex::Complex64;

use super::element::GroupElement;
use super::function::{DecayClass, Evaluator, GroupFunction};
use crate::error::{Error, Result};
use crate::numerics::{integrate_2d, integrate_try, Domain, QuadratureRule};

/// Right convolution `f ⋆ k(x, z) = ∬ f((x, z)·(s, t)⁻¹) k(s, t) ds/s dt`.
///
/// The integral runs over the support of `k` when it has one; otherwise it
/// is rewritten as `∬ f(p, q) k(x/p, (z − q)/p) dp dq / p²` and runs over the
/// support of `f`.
pub fn convolve(f: &GroupFunction, k: &GroupFunction, at: GroupElement, rule: &QuadratureRule) -> Result<Complex64> {
    let (x, z) = (at.x(), at.z());
    if k.support().is_some() {
        let fe = f.evaluator();
        let ke = k.evaluator();
        return integrate_2d(
            |u, t| {
                let s = u.exp();
                Ok(fe(x / s, z - x * t / s)? * ke(s, t)?)
            },
            k.log_x_domain(),
            |u| k.z_domain(u.exp()),
            rule,
        )?
        .require_converged();
    }
    if f.support().is_some() {
        let fe = f.evaluator();
        let ke = k.evaluator();
        return integrate_2d(
            |v, q| {
                let p = v.exp();
                Ok(fe(p, q)? * ke(x / p, (z - q) / p)? / p)
            },
            f.log_x_domain(),
            |v| f.z_domain(v.exp()),
            rule,
        )?
        .require_converged();
    }
    Err(Error::Precondition(
        "convolution needs at least one factor with a support box".into(),
    ))
}

/// `f ⋆ k` as a group function. Point values come from [`convolve`]; the
/// partial Fourier transform uses `(f ⋆ k)^(x, ζ) = ∫ f̂(x/s, ζ) k̂(s, ζx/s) ds/s`,
/// available when both factors have closed-form transforms.
pub fn convolution_function(f: &GroupFunction, k: &GroupFunction, rule: &QuadratureRule) -> Result<GroupFunction> {
    if f.support().is_none() && k.support().is_none() {
        return Err(Error::Precondition(
            "convolution needs at least one factor with a support box".into(),
        ));
    }
    let (fc, kc, r) = (f.clone(), k.clone(), *rule);
    let eval: Evaluator = Arc::new(move |x, z| convolve(&fc, &kc, GroupElement::new(x, z)?, &r));
    let hat = if f.has_closed_form_transform() && k.has_closed_form_transform() {
        let (fc, kc, r) = (f.clone(), k.clone(), *rule);
        let carrier = match (f.decay(), k.decay()) {
            (DecayClass::Compact(b), _) | (DecayClass::Gaussian(b), _) => {
                Carrier::FromF(b.log_x, matches!(f.decay(), DecayClass::Compact(_)))
            }
            (_, DecayClass::Compact(b)) | (_, DecayClass::Gaussian(b)) => {
                Carrier::FromK(b.log_x, matches!(k.decay(), DecayClass::Compact(_)))
            }
            _ => unreachable!("checked above"),
        };
        let h: Evaluator = Arc::new(move |x, zeta| {
            // u = log s
            let dom = match carrier {
                Carrier::FromF(b, compact) => {
                    let lx = x.ln();
                    let core = (lx - b.1, lx - b.0);
                    if compact {
                        Domain::Interval(core.0, core.1)
                    } else {
                        Domain::ExpTails { core }
                    }
                }
                Carrier::FromK(b, compact) => {
                    if compact {
                        Domain::Interval(b.0, b.1)
                    } else {
                        Domain::ExpTails { core: b }
                    }
                }
            };
            integrate_try(
                |u| {
                    let s = u.exp();
                    Ok(fc.partial_fourier(x / s, zeta, &r)? * kc.partial_fourier(s, zeta * x / s, &r)?)
                },
                dom,
                &r,
            )?
            .require_converged()
        });
        Some(h)
    } else {
        None
    };
    Ok(GroupFunction::kernel(eval, hat))
}

#[derive(Clone, Copy)]
enum Carrier {
    FromF((f64, f64), bool),
    FromK((f64, f64), bool),
}
