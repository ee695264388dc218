use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::LogGaussian;
use crate::numerics::{integrate_2d, Domain, Estimate, QuadratureRule};

/// Tolerance on `|∬ (f₁ + f₂) dx dz|` for densities flagged mean-zero.
pub const MEAN_ZERO_TOL: f64 = 1e-10;

pub type SheetEvaluator = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Where a sheet function lives in `(x, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SheetSupport {
    /// Zero outside `x ∈ [x.0, x.1]`, `z ∈ [z.0, z.1]`, with `x.0 ≥ 0`.
    Box { x: (f64, f64), z: (f64, f64) },
    /// Gaussian decay in `(log x, z)` outside the given core ranges.
    LogGaussian { log_x: (f64, f64), z: (f64, f64) },
    /// Identically zero.
    Empty,
}

/// One sheet of a boundary density.
#[derive(Clone)]
pub struct Sheet {
    eval: SheetEvaluator,
    support: SheetSupport,
}

impl fmt::Debug for Sheet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sheet").field("support", &self.support).finish()
    }
}

impl Sheet {
    pub fn zero() -> Self {
        Self {
            eval: Arc::new(|_, _| Complex64::new(0.0, 0.0)),
            support: SheetSupport::Empty,
        }
    }

    /// Function vanishing outside a box; `x.0 ≥ 0` is required and the
    /// support claim is spot-checked just outside the box.
    pub fn compact<F>(f: F, x: (f64, f64), z: (f64, f64)) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        let finite = [x.0, x.1, z.0, z.1].iter().all(|v| v.is_finite());
        if !finite || x.0 < 0.0 || x.0 >= x.1 || z.0 >= z.1 {
            return Err(Error::InvalidParameter(format!(
                "sheet support box must satisfy 0 <= x0 < x1, z0 < z1; got x={x:?}, z={z:?}"
            )));
        }
        let n = 24;
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let xs = x.0 + (x.1 - x.0) * t;
            let zs = z.0 + (z.1 - z.0) * t;
            let dx = 1e-3 * (x.1 - x.0);
            let dz = 1e-3 * (z.1 - z.0);
            let mut out = vec![(xs, z.0 - dz), (xs, z.1 + dz), (x.1 + dx, zs)];
            if x.0 - dx > 0.0 {
                out.push((x.0 - dx, zs));
            }
            for (a, b) in out {
                if f(a, b).norm() != 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "sheet function is nonzero at ({a}, {b}) outside its declared box"
                    )));
                }
            }
        }
        Ok(Self {
            eval: Arc::new(f),
            support: SheetSupport::Box { x, z },
        })
    }

    pub fn gaussian(g: LogGaussian) -> Self {
        let b = g.support_box();
        Self {
            eval: Arc::new(move |x, z| g.eval(x, z)),
            support: SheetSupport::LogGaussian { log_x: b.log_x, z: b.z },
        }
    }

    pub fn eval(&self, x: f64, z: f64) -> Complex64 {
        (self.eval)(x, z)
    }

    pub fn support(&self) -> SheetSupport {
        self.support
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.support, SheetSupport::Empty)
    }

    pub fn is_compact(&self) -> bool {
        !matches!(self.support, SheetSupport::LogGaussian { .. })
    }

    /// Bounding box in `(x, z)` outside which the sheet is negligible.
    pub fn bounding_box(&self) -> Option<((f64, f64), (f64, f64))> {
        match self.support {
            SheetSupport::Box { x, z } => Some((x, z)),
            SheetSupport::LogGaussian { log_x, z } => Some(((log_x.0.exp(), log_x.1.exp()), z)),
            SheetSupport::Empty => None,
        }
    }

    /// `∬ f(u, v) h(u, v) du dv` over the support.
    pub fn integrate_against<H>(&self, h: H, rule: &QuadratureRule) -> Result<Estimate<Complex64>>
    where
        H: Fn(f64, f64) -> Result<Complex64>,
    {
        let f = &self.eval;
        self.integrate_over_support(|u, v| Ok(f(u, v) * h(u, v)?), rule)
    }

    /// `∬ h(u, v) du dv` over the support of this sheet.
    pub fn integrate_over_support<H>(&self, h: H, rule: &QuadratureRule) -> Result<Estimate<Complex64>>
    where
        H: Fn(f64, f64) -> Result<Complex64>,
    {
        match self.support {
            SheetSupport::Empty => Ok(Estimate {
                value: Complex64::new(0.0, 0.0),
                error: 0.0,
                evaluations: 0,
                converged: true,
            }),
            SheetSupport::Box { x, z } => {
                integrate_2d(h, Domain::Interval(x.0, x.1), |_| Domain::Interval(z.0, z.1), rule)
            }
            SheetSupport::LogGaussian { log_x, z } => integrate_2d(
                |rho, v| {
                    let u = rho.exp();
                    Ok(h(u, v)? * u)
                },
                Domain::ExpTails { core: log_x },
                |_| Domain::ExpTails { core: z },
                rule,
            ),
        }
    }
}

/// A density on the two sheets of the wedge boundary, in `L^{2,a}` with
/// measure `x^a dx dz` on each sheet.
#[derive(Debug, Clone)]
pub struct BoundaryDensity {
    sheets: [Sheet; 2],
    a: f64,
    mean_zero: bool,
}

impl BoundaryDensity {
    pub fn new(f1: Sheet, f2: Sheet, a: f64) -> Result<Self> {
        if !a.is_finite() || !(a > -1.0 && a < 3.0) {
            return Err(Error::InvalidParameter(format!(
                "weight exponent a must lie in (-1, 3), got {a}"
            )));
        }
        Ok(Self {
            sheets: [f1, f2],
            a,
            mean_zero: false,
        })
    }

    pub fn zero(a: f64) -> Result<Self> {
        Self::new(Sheet::zero(), Sheet::zero(), a)
    }

    /// Sets the mean-zero flag after checking `|∬ (f₁ + f₂) dx dz| < 1e−10`.
    pub fn with_mean_zero(mut self, rule: &QuadratureRule) -> Result<Self> {
        let m = self.mean(rule)?;
        if m.norm() >= MEAN_ZERO_TOL {
            return Err(Error::Precondition(format!(
                "density flagged mean-zero has mean {:e}",
                m.norm()
            )));
        }
        self.mean_zero = true;
        Ok(self)
    }

    pub fn sheet(&self, i: usize) -> &Sheet {
        &self.sheets[i]
    }

    pub fn sheets(&self) -> &[Sheet; 2] {
        &self.sheets
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn is_mean_zero(&self) -> bool {
        self.mean_zero
    }

    pub fn is_compact(&self) -> bool {
        self.sheets.iter().all(Sheet::is_compact)
    }

    /// `∬ (f₁ + f₂) dx dz`.
    pub fn mean(&self, rule: &QuadratureRule) -> Result<Complex64> {
        // accurate enough to resolve MEAN_ZERO_TOL whatever the caller's rule
        let tight = QuadratureRule {
            abs_tol: rule.abs_tol.min(1e-13),
            rel_tol: rule.rel_tol.min(1e-12),
            max_refinements: rule.max_refinements.max(4000),
        };
        let one = |_: f64, _: f64| Ok(Complex64::new(1.0, 0.0));
        let mut total = Complex64::new(0.0, 0.0);
        for s in &self.sheets {
            total += s.integrate_against(one, &tight)?.require_converged()?;
        }
        Ok(total)
    }

    /// `‖f‖²_{L^{2,a}} = Σᵢ ∬ |fᵢ|² x^a dx dz`.
    pub fn weighted_norm_sq(&self, rule: &QuadratureRule) -> Result<f64> {
        let a = self.a;
        let mut total = 0.0;
        for s in &self.sheets {
            let f = s.eval.clone();
            total += s
                .integrate_against(move |x, z| Ok(f(x, z).conj() * x.powf(a)), rule)?
                .require_converged()?
                .re;
        }
        Ok(total)
    }

    /// Unweighted `L²(Γ)` norm.
    pub fn l2_norm(&self, rule: &QuadratureRule) -> Result<f64> {
        let mut total = 0.0;
        for s in &self.sheets {
            let f = s.eval.clone();
            total += s
                .integrate_against(move |x, z| Ok(f(x, z).conj()), rule)?
                .require_converged()?
                .re;
        }
        Ok(total.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(c: (f64, f64), w: f64, scale: f64) -> impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static {
        move |x, z| {
            let r2 = ((x - c.0).powi(2) + (z - c.1).powi(2)) / (w * w);
            Complex64::new(if r2 < 1.0 { scale * (1.0 - r2).powi(4) } else { 0.0 }, 0.0)
        }
    }

    #[test]
    fn mean_zero_flag() {
        let rule = QuadratureRule::new(1e-12, 1e-12, 4000).unwrap();
        let f1 = Sheet::compact(bump((1.0, 0.0), 0.5, 1.0), (0.5, 1.5), (-0.5, 0.5)).unwrap();
        let f2 = Sheet::compact(bump((1.2, 0.3), 0.4, -(0.5f64 / 0.4).powi(2)), (0.8, 1.6), (-0.1, 0.7)).unwrap();
        let d = BoundaryDensity::new(f1.clone(), f2, 0.0)
            .unwrap()
            .with_mean_zero(&rule)
            .unwrap();
        assert!(d.is_mean_zero() && d.is_compact());
        assert!(BoundaryDensity::new(f1, Sheet::zero(), 0.0)
            .unwrap()
            .with_mean_zero(&rule)
            .is_err());
    }

    #[test]
    fn support_claims_are_checked() {
        assert!(Sheet::compact(|_, _| Complex64::new(1.0, 0.0), (0.5, 1.5), (-1.0, 1.0)).is_err());
        assert!(Sheet::compact(bump((1.0, 0.0), 0.5, 1.0), (-0.1, 1.5), (-0.5, 0.5)).is_err());
    }
}
