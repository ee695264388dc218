use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::function::{DecayClass, Evaluator, GroupFunction};
use crate::error::{Error, Result};
use crate::numerics::{integrate_2d, Domain, Estimate, QuadratureRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// Where a kernel on `(0, ∞)²` carries its mass, in log coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelLayout {
    /// Mass near `log r ∈ log_r`, `log w ∈ log_w`, exponential decay outside.
    Separate { log_r: (f64, f64), log_w: (f64, f64) },
    /// Mass near `log r ∈ log_r`, `log(w/r) ∈ log_ratio`, exponential decay outside.
    Band { log_r: (f64, f64), log_ratio: (f64, f64) },
}

/// Integral kernel `κ(r, w)` of an operator `η ↦ ∫ κ(·, w) η(w) dw/w` on
/// `L²(ℝ₊, dr/r)`, tagged with the representation sign it came from.
#[derive(Clone)]
pub struct HsKernel {
    eval: Evaluator,
    sign: Sign,
    layout: KernelLayout,
}

impl std::fmt::Debug for HsKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HsKernel")
            .field("sign", &self.sign)
            .field("layout", &self.layout)
            .finish()
    }
}

impl HsKernel {
    pub fn new(eval: Evaluator, sign: Sign, layout: KernelLayout) -> Self {
        Self { eval, sign, layout }
    }

    pub fn eval(&self, r: f64, w: f64) -> Result<Complex64> {
        (self.eval)(r, w)
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn layout(&self) -> KernelLayout {
        self.layout
    }
}

/// Kernel of `P_±(f)`: `κ_±(r, w) = √r · f̂(w/r, ±r)`.
///
/// With this kernel `P_±(f)η(r) = ∫ κ_±(r, w) η(w) dw/w`, which is
/// `√r ∬ e^{∓2πizr} η(xr) f(x, z) dx/x dz` after `w = xr`.
pub fn plancherel_kernel(f: &GroupFunction, sign: Sign, rule: &QuadratureRule) -> Result<HsKernel> {
    let log_ratio = match f.decay() {
        DecayClass::Compact(b) | DecayClass::Gaussian(b) => b.log_x,
        DecayClass::Kernel => (-6.0, 6.0),
    };
    // transforms of the test class live at |ζ| ≲ few units
    let reach = match f.as_gaussian() {
        Some(g) => g.freq.abs() + 6.0 / (PI * g.tau),
        None => 4.0,
    };
    let layout = KernelLayout::Band {
        log_r: (-4.0, (reach + 1.0).ln()),
        log_ratio,
    };
    let fc = f.clone();
    let r_rule = *rule;
    let s = sign.value();
    let eval: Evaluator = Arc::new(move |r, w| Ok(fc.partial_fourier(w / r, s * r, &r_rule)? * r.sqrt()));
    Ok(HsKernel::new(eval, sign, layout))
}

/// `∬ |κ(r, w)|² dr/r dw/w`.
pub fn hs_norm_sq(kappa: &HsKernel, rule: &QuadratureRule) -> Result<Estimate<f64>> {
    let e = &kappa.eval;
    match kappa.layout {
        KernelLayout::Separate { log_r, log_w } => integrate_2d(
            |rho, omega| Ok(e(rho.exp(), omega.exp())?.norm_sqr()),
            Domain::ExpTails { core: log_r },
            |_| Domain::ExpTails { core: log_w },
            rule,
        ),
        KernelLayout::Band { log_r, log_ratio } => integrate_2d(
            |rho, delta| Ok(e(rho.exp(), (rho + delta).exp())?.norm_sqr()),
            Domain::ExpTails { core: log_r },
            |_| Domain::ExpTails { core: log_ratio },
            rule,
        ),
    }
}

/// Hilbert–Schmidt norm `(∬ |κ|² dr/r dw/w)^{1/2}`.
pub fn hs_norm(kappa: &HsKernel, rule: &QuadratureRule) -> Result<Estimate<f64>> {
    let sq = hs_norm_sq(kappa, rule)?;
    if sq.value < 0.0 {
        return Err(Error::NonFinite { at: sq.value });
    }
    let value = sq.value.sqrt();
    let error = if value > 0.0 {
        sq.error / (2.0 * value)
    } else {
        sq.error.sqrt()
    };
    Ok(Estimate {
        value,
        error,
        evaluations: sq.evaluations,
        converged: sq.converged,
    })
}
