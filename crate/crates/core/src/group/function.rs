use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::element::GroupElement;
use crate::error::{Error, Result};
use crate::numerics::{integrate_2d, integrate_try, Domain, Estimate, QuadratureRule};

/// Fallible evaluator of a function of `(x, z)` (or of `(x, ζ)` for transforms).
pub type Evaluator = Arc<dyn Fn(f64, f64) -> Result<Complex64> + Send + Sync>;

/// Region `log x ∈ log_x`, `z + shear·x ∈ z` in `(log x, z)` coordinates: a
/// rectangle when `shear = 0`, and the image of one under right translation
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportBox {
    pub log_x: (f64, f64),
    pub z: (f64, f64),
    pub shear: f64,
}

impl SupportBox {
    pub fn new(log_x: (f64, f64), z: (f64, f64)) -> Result<Self> {
        let ok = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 < r.1;
        if !ok(log_x) || !ok(z) {
            return Err(Error::InvalidParameter(format!(
                "support box needs finite increasing ranges, got log_x={log_x:?}, z={z:?}"
            )));
        }
        Ok(Self { log_x, z, shear: 0.0 })
    }

    /// The `z`-range of the region at fixed `x`.
    pub fn z_range(&self, x: f64) -> (f64, f64) {
        (self.z.0 - self.shear * x, self.z.1 - self.shear * x)
    }

    pub fn contains(&self, x: f64, z: f64) -> bool {
        let u = x.ln();
        let (lo, hi) = self.z_range(x);
        u >= self.log_x.0 && u <= self.log_x.1 && z >= lo && z <= hi
    }
}

/// How a function decays, which fixes the integration domains used for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// Vanishes outside the box.
    Compact(SupportBox),
    /// Below `1e−12` of its peak outside the box, with Gaussian-type decay beyond.
    Gaussian(SupportBox),
    /// Integrable with power-law decay in `z` and exponential decay in `log x`
    /// (convolution kernels); not usable as the integration carrier.
    Kernel,
}

/// `A·exp(−((log x − μ)/σ)² − ((z − ν)/τ)²)·e^{2πi k z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGaussian {
    pub amplitude: Complex64,
    pub mu: f64,
    pub sigma: f64,
    pub nu: f64,
    pub tau: f64,
    pub freq: f64,
}

impl LogGaussian {
    /// `exp(−(log x)² − z²)`.
    pub fn standard() -> Self {
        Self {
            amplitude: Complex64::new(1.0, 0.0),
            mu: 0.0,
            sigma: 1.0,
            nu: 0.0,
            tau: 1.0,
            freq: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = [
            self.mu,
            self.sigma,
            self.nu,
            self.tau,
            self.freq,
            self.amplitude.re,
            self.amplitude.im,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite || !(self.sigma > 0.0) || !(self.tau > 0.0) {
            return Err(Error::InvalidParameter(format!("invalid log-Gaussian {self:?}")));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, z: f64) -> Complex64 {
        let u = (x.ln() - self.mu) / self.sigma;
        let v = (z - self.nu) / self.tau;
        self.amplitude * (-u * u - v * v).exp() * Complex64::from_polar(1.0, 2.0 * PI * self.freq * z)
    }

    /// `∫ e^{−2πizζ} f(x, z) dz` in closed form.
    pub fn partial_fourier(&self, x: f64, zeta: f64) -> Complex64 {
        let u = (x.ln() - self.mu) / self.sigma;
        let d = zeta - self.freq;
        let mag = self.tau * PI.sqrt() * (-u * u - PI * PI * self.tau * self.tau * d * d).exp();
        self.amplitude * Complex64::from_polar(mag, -2.0 * PI * d * self.nu)
    }

    /// `‖f‖²` in `L²(G, dx/x dz)`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.amplitude.norm_sqr() * self.sigma * self.tau * PI / 2.0
    }

    /// `x^γ f`, again a log-Gaussian.
    pub fn weighted(&self, gamma: f64) -> Self {
        let shift = gamma * self.sigma * self.sigma / 2.0;
        let scale = (gamma * self.mu + gamma * gamma * self.sigma * self.sigma / 4.0).exp();
        Self {
            amplitude: self.amplitude * scale,
            mu: self.mu + shift,
            ..*self
        }
    }

    /// Box outside which `|f| < e^{−36}·|A|`.
    pub fn support_box(&self) -> SupportBox {
        SupportBox {
            log_x: (self.mu - 6.0 * self.sigma, self.mu + 6.0 * self.sigma),
            z: (self.nu - 6.0 * self.tau, self.nu + 6.0 * self.tau),
            shear: 0.0,
        }
    }
}

/// A function on the `ax+b` group together with its decay class, the weight
/// exponent `γ` already applied (`V_γ f = x^γ f`), and optionally a closed form
/// of its partial Fourier transform in `z`.
#[derive(Clone)]
pub struct GroupFunction {
    eval: Evaluator,
    hat: Option<Evaluator>,
    decay: DecayClass,
    gamma: f64,
    gaussian: Option<LogGaussian>,
}

impl fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupFunction")
            .field("decay", &self.decay)
            .field("gamma", &self.gamma)
            .field("gaussian", &self.gaussian)
            .field("closed_form_transform", &self.hat.is_some())
            .finish()
    }
}

const HONESTY_RATIO: f64 = 1e-12;

impl GroupFunction {
    pub fn gaussian(g: LogGaussian) -> Result<Self> {
        g.validate()?;
        Ok(Self {
            eval: Arc::new(move |x, z| Ok(g.eval(x, z))),
            hat: Some(Arc::new(move |x, zeta| Ok(g.partial_fourier(x, zeta)))),
            decay: DecayClass::Gaussian(g.support_box()),
            gamma: 0.0,
            gaussian: Some(g),
        })
    }

    /// Compactly supported function; the support claim is checked by sampling.
    pub fn compact<F>(f: F, support: SupportBox) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        let eval: Evaluator = Arc::new(move |x, z| Ok(f(x, z)));
        check_decay(&eval, &support)?;
        Ok(Self {
            eval,
            hat: None,
            decay: DecayClass::Compact(support),
            gamma: 0.0,
            gaussian: None,
        })
    }

    /// Function with Gaussian-type decay outside `core`; checked by sampling.
    pub fn rapidly_decaying<F>(f: F, core: SupportBox) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    {
        let eval: Evaluator = Arc::new(move |x, z| Ok(f(x, z)));
        check_decay(&eval, &core)?;
        Ok(Self {
            eval,
            hat: None,
            decay: DecayClass::Gaussian(core),
            gamma: 0.0,
            gaussian: None,
        })
    }

    /// Convolution kernel with power-law decay, optionally with a closed-form
    /// partial Fourier transform `(x, ζ) ↦ ∫ e^{−2πizζ} k(x, z) dz`.
    pub fn kernel(eval: Evaluator, hat: Option<Evaluator>) -> Self {
        Self {
            eval,
            hat,
            decay: DecayClass::Kernel,
            gamma: 0.0,
            gaussian: None,
        }
    }

    /// `V_γ f = x^γ f`. Weights compose additively.
    pub fn weighted(&self, gamma: f64) -> Result<Self> {
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "weight exponent must be finite, got {gamma}"
            )));
        }
        if let Some(g) = self.gaussian {
            let mut out = Self::gaussian(g.weighted(gamma))?;
            out.gamma = self.gamma + gamma;
            return Ok(out);
        }
        let base = self.eval.clone();
        let eval: Evaluator = Arc::new(move |x, z| Ok(base(x, z)? * x.powf(gamma)));
        let hat = self
            .hat
            .clone()
            .map(|h| -> Evaluator { Arc::new(move |x, zeta| Ok(h(x, zeta)? * x.powf(gamma))) });
        Ok(Self {
            eval,
            hat,
            decay: self.decay,
            gamma: self.gamma + gamma,
            gaussian: None,
        })
    }

    /// `g ↦ f(g·h)`.
    pub fn right_translate(&self, h: GroupElement) -> Result<Self> {
        let (s, t) = (h.x(), h.z());
        let base = self.eval.clone();
        let eval: Evaluator = Arc::new(move |x, z| base(x * s, x * t + z));
        let hat = self.hat.clone().map(|h| -> Evaluator {
            Arc::new(move |x, zeta| Ok(h(x * s, zeta)? * Complex64::from_polar(1.0, 2.0 * PI * x * t * zeta)))
        });
        // x s ∈ e^{log_x}, x t + z + shear·x s ∈ z
        let moved = |b: SupportBox| -> Result<SupportBox> {
            Ok(SupportBox {
                log_x: (b.log_x.0 - s.ln(), b.log_x.1 - s.ln()),
                z: b.z,
                shear: b.shear * s + t,
            })
        };
        let decay = match self.decay {
            DecayClass::Compact(b) => DecayClass::Compact(moved(b)?),
            DecayClass::Gaussian(b) => DecayClass::Gaussian(moved(b)?),
            DecayClass::Kernel => DecayClass::Kernel,
        };
        Ok(Self {
            eval,
            hat,
            decay,
            gamma: self.gamma,
            gaussian: None,
        })
    }

    pub fn eval(&self, g: GroupElement) -> Result<Complex64> {
        (self.eval)(g.x(), g.z())
    }

    pub fn eval_xz(&self, x: f64, z: f64) -> Result<Complex64> {
        (self.eval)(x, z)
    }

    pub fn evaluator(&self) -> Evaluator {
        self.eval.clone()
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn as_gaussian(&self) -> Option<&LogGaussian> {
        self.gaussian.as_ref()
    }

    pub fn has_closed_form_transform(&self) -> bool {
        self.hat.is_some()
    }

    /// The integration carrier box, if the function has one.
    pub fn support(&self) -> Option<SupportBox> {
        match self.decay {
            DecayClass::Compact(b) | DecayClass::Gaussian(b) => Some(b),
            DecayClass::Kernel => None,
        }
    }

    /// Integration domain in `log x`.
    pub fn log_x_domain(&self) -> Domain {
        match self.decay {
            DecayClass::Compact(b) => Domain::Interval(b.log_x.0, b.log_x.1),
            DecayClass::Gaussian(b) => Domain::ExpTails { core: b.log_x },
            DecayClass::Kernel => Domain::ExpTails { core: (-6.0, 6.0) },
        }
    }

    /// Integration domain in `z` at fixed `x`. Kernels spread over
    /// `|z| ≲ max(1, x)`.
    pub fn z_domain(&self, x: f64) -> Domain {
        match self.decay {
            DecayClass::Compact(b) => {
                let (lo, hi) = b.z_range(x);
                Domain::Interval(lo, hi)
            }
            DecayClass::Gaussian(b) => Domain::ExpTails { core: b.z_range(x) },
            DecayClass::Kernel => Domain::ScaledRealLine(x.max(1.0)),
        }
    }

    /// `f̂(x, ζ) = ∫ e^{−2πizζ} f(x, z) dz`: closed form when available,
    /// quadrature otherwise.
    pub fn partial_fourier(&self, x: f64, zeta: f64, rule: &QuadratureRule) -> Result<Complex64> {
        if let Some(h) = &self.hat {
            return h(x, zeta);
        }
        let f = &self.eval;
        integrate_try(
            |z| Ok(f(x, z)? * Complex64::from_polar(1.0, -2.0 * PI * z * zeta)),
            self.z_domain(x),
            rule,
        )?
        .require_converged()
    }

    /// `∬ f(x, z) dx/x dz`.
    pub fn haar_integral(&self, rule: &QuadratureRule) -> Result<Estimate<Complex64>> {
        let f = &self.eval;
        integrate_2d(
            |u, z| f(u.exp(), z),
            self.log_x_domain(),
            |u| self.z_domain(u.exp()),
            rule,
        )
    }

    /// `‖f‖_{L¹(G)}`.
    pub fn l1_norm(&self, rule: &QuadratureRule) -> Result<Estimate<f64>> {
        let f = &self.eval;
        integrate_2d(
            |u, z| Ok(f(u.exp(), z)?.norm()),
            self.log_x_domain(),
            |u| self.z_domain(u.exp()),
            rule,
        )
    }

    /// `‖f‖²_{L²(G)}`; exact for log-Gaussians.
    pub fn l2_norm_sq(&self, rule: &QuadratureRule) -> Result<Estimate<f64>> {
        if let Some(g) = self.gaussian {
            return Ok(Estimate {
                value: g.l2_norm_sq(),
                error: 0.0,
                evaluations: 0,
                converged: true,
            });
        }
        self.l2_norm_sq_numeric(rule)
    }

    /// `‖f‖²_{L²(G)}` by quadrature regardless of closed forms.
    pub fn l2_norm_sq_numeric(&self, rule: &QuadratureRule) -> Result<Estimate<f64>> {
        let f = &self.eval;
        integrate_2d(
            |u, z| Ok(f(u.exp(), z)?.norm_sqr()),
            self.log_x_domain(),
            |u| self.z_domain(u.exp()),
            rule,
        )
    }
}

/// Peak on a grid inside the box versus samples on three rings outside it.
fn check_decay(eval: &Evaluator, b: &SupportBox) -> Result<()> {
    const N: usize = 41;
    let lerp = |r: (f64, f64), t: f64| r.0 + (r.1 - r.0) * t;
    let mut peak: f64 = 0.0;
    for i in 0..N {
        for j in 0..N {
            let u = lerp(b.log_x, i as f64 / (N - 1) as f64);
            let z = lerp(b.z, j as f64 / (N - 1) as f64);
            peak = peak.max(eval(u.exp(), z - b.shear * u.exp())?.norm());
        }
    }
    let wu = b.log_x.1 - b.log_x.0;
    let wz = b.z.1 - b.z.0;
    let mut worst: f64 = 0.0;
    for margin in [0.02, 0.25, 1.0] {
        let lo_u = b.log_x.0 - margin * wu;
        let hi_u = b.log_x.1 + margin * wu;
        let lo_z = b.z.0 - margin * wz;
        let hi_z = b.z.1 + margin * wz;
        for i in 0..N {
            let t = i as f64 / (N - 1) as f64;
            let u = lerp((lo_u, hi_u), t);
            let z = lerp((lo_z, hi_z), t);
            for (uu, zz) in [(u, lo_z), (u, hi_z), (lo_u, z), (hi_u, z)] {
                worst = worst.max(eval(uu.exp(), zz - b.shear * uu.exp())?.norm());
            }
        }
    }
    if worst > HONESTY_RATIO * peak {
        return Err(Error::InvalidParameter(format!(
            "declared support is not honest: |f| = {worst:e} outside the box, peak {peak:e}"
        )));
    }
    Ok(())
}
