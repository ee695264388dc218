//! Adaptive Gauss–Kronrod quadrature on finite, half-infinite and infinite
//! domains, plus a nested two-dimensional driver.
//!
//! Every integral in the crate goes through [`integrate`] or one of its
//! siblings. Unbounded domains are handled in two ways:
//!
//! * power-law tails ([`Domain::HalfLine`], [`Domain::RealLine`]) are mapped
//!   onto a finite interval with a rational substitution;
//! * exponentially decaying tails ([`Domain::ExpTails`]) are integrated chunk by
//!   chunk outward from a core interval and clipped once the integrand falls
//!   below `abs_tol / 100`. This is the natural form for Haar integrals
//!   `∫₀^∞ f(s) ds/s` after the substitution `s = eᵘ`.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar values a quadrature can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Tolerances and refinement budget shared by all quadrature drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of interval bisections per adaptive run.
    pub max_refinements: usize,
}

impl QuadratureRule {
    pub fn new(abs_tol: f64, rel_tol: f64, max_refinements: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) || !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerances must be positive (abs_tol={abs_tol}, rel_tol={rel_tol})"
            )));
        }
        if max_refinements == 0 {
            return Err(Error::InvalidParameter("max_refinements must be at least 1".into()));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_refinements,
        })
    }

    /// Target error for a result of the given magnitude.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }

    /// Same budget, tolerances multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            max_refinements: self.max_refinements,
        }
    }
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_refinements: 2000,
        }
    }
}

/// Integration domain. The variant fixes the decay class the caller vouches for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval(f64, f64),
    /// `[start, ∞)` with integrable (power-law or faster) decay.
    HalfLine(f64),
    /// `(-∞, ∞)` with integrable (power-law or faster) decay on both sides.
    RealLine,
    /// `(-∞, ∞)` for integrands whose mass sits at `|t| ≲ scale`.
    ScaledRealLine(f64),
    /// `(-∞, ∞)` with exponential decay outside `core`.
    ExpTails {
        core: (f64, f64),
    },
}

/// Result of a quadrature: value, error estimate and convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: QuadValue> Estimate<T> {
    /// Unwraps the value, turning a flagged (non-converged) result into an error.
    pub fn require_converged(self) -> Result<T> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NoConvergence {
                value: self.value.magnitude(),
                error: self.error,
                evaluations: self.evaluations,
            })
        }
    }
}

// 15-point Kronrod abscissae (positive half, descending) with the embedded
// 7-point Gauss rule; values from QUADPACK's qk15.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval_checked<T: QuadValue, F: Fn(f64) -> Result<T>>(f: &F, x: f64) -> Result<T> {
    let v = f(x)?;
    if !v.is_finite() {
        return Err(Error::NonFinite { at: x });
    }
    Ok(v)
}

fn gauss_kronrod<T: QuadValue, F: Fn(f64) -> Result<T>>(f: &F, a: f64, b: f64) -> Result<Segment<T>> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval_checked(f, center)?;
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = fc.magnitude() * WGK[7];
    let mut values = [(T::zero(), T::zero()); 7];
    for (j, slot) in values.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = eval_checked(f, center - dx)?;
        let f2 = eval_checked(f, center + dx)?;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
        *slot = (f1, f2);
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).magnitude();
    for (j, (f1, f2)) in values.iter().enumerate() {
        resasc += WGK[j] * ((*f1 - mean).magnitude() + (*f2 - mean).magnitude());
    }
    let width = half.abs();
    resabs *= width;
    resasc *= width;
    let mut error = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Segment {
        a,
        b,
        value: resk * half,
        error,
    })
}

const EVALS_PER_SEGMENT: usize = 15;

/// Global adaptive bisection over `[breaks[0], breaks[last]]`, starting from
/// the given partition. `abs_floor` lets composite drivers demand absolute
/// accuracy relative to a larger enclosing integral.
fn adaptive<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: &F,
    breaks: &[f64],
    rule: &QuadratureRule,
    abs_floor: f64,
) -> Result<Estimate<T>> {
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] != w[0] {
            heap.push(gauss_kronrod(f, w[0], w[1])?);
            evaluations += EVALS_PER_SEGMENT;
        }
    }
    let sums = |heap: &BinaryHeap<Segment<T>>| {
        heap.iter()
            .fold((T::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    let (mut total, mut total_err) = sums(&heap);
    let mut refinements = 0;
    let target = |total: T| rule.target(total.magnitude()).max(abs_floor);
    while total_err > target(total) && refinements < rule.max_refinements {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid == worst.a || mid == worst.b {
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(f, worst.a, mid)?;
        let right = gauss_kronrod(f, mid, worst.b)?;
        evaluations += 2 * EVALS_PER_SEGMENT;
        total = total - worst.value + left.value + right.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        refinements += 1;
        if refinements % 64 == 0 {
            let (v, e) = sums(&heap);
            total = v;
            total_err = e;
        }
    }
    let (total, total_err) = sums(&heap);
    Ok(Estimate {
        value: total,
        error: total_err,
        evaluations,
        converged: total_err <= target(total),
    })
}

/// Integrates `f` over `domain`.
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(f: F, domain: Domain, rule: &QuadratureRule) -> Result<Estimate<T>> {
    integrate_try(|x| Ok(f(x)), domain, rule)
}

/// Like [`integrate`] for integrands that can fail.
pub fn integrate_try<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: F,
    domain: Domain,
    rule: &QuadratureRule,
) -> Result<Estimate<T>> {
    integrate_floor(&f, domain, rule, 0.0)
}

// t = c·τ/(1-τ²), τ ∈ (-1, 1)
fn real_line<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: &F,
    c: f64,
    rule: &QuadratureRule,
    abs_floor: f64,
) -> Result<Estimate<T>> {
    let g = |tau: f64| {
        let one = 1.0 - tau * tau;
        let v = f(c * tau / one)?;
        Ok(v * (c * (1.0 + tau * tau) / (one * one)))
    };
    adaptive(&g, &[-1.0, -0.5, 0.0, 0.5, 1.0], rule, abs_floor)
}

fn integrate_floor<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: &F,
    domain: Domain,
    rule: &QuadratureRule,
    abs_floor: f64,
) -> Result<Estimate<T>> {
    match domain {
        Domain::Interval(a, b) => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::Domain(format!("interval [{a}, {b}] is not finite")));
            }
            adaptive(f, &[a, b], rule, abs_floor)
        }
        Domain::HalfLine(start) => {
            // t = start + τ/(1-τ), τ ∈ [0, 1)
            let g = |tau: f64| {
                let one = 1.0 - tau;
                let v = f(start + tau / one)?;
                Ok(v * (1.0 / (one * one)))
            };
            adaptive(&g, &[0.0, 0.5, 1.0], rule, abs_floor)
        }
        Domain::RealLine => real_line(f, 1.0, rule, abs_floor),
        Domain::ScaledRealLine(c) => {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::Domain(format!("real-line scale must be positive, got {c}")));
            }
            real_line(f, c, rule, abs_floor)
        }
        Domain::ExpTails { core } => exp_tails(f, core, rule, abs_floor),
    }
}

const MAX_TAIL_CHUNKS: usize = 48;

fn exp_tails<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: &F,
    core: (f64, f64),
    rule: &QuadratureRule,
    abs_floor: f64,
) -> Result<Estimate<T>> {
    let (lo, hi) = if core.0 <= core.1 { core } else { (core.1, core.0) };
    let width = (hi - lo).max(1.0);
    let pieces = ((hi - lo) / 4.0).ceil().clamp(1.0, 64.0) as usize;
    let breaks: Vec<f64> = (0..=pieces)
        .map(|i| lo + (hi - lo) * i as f64 / pieces as f64)
        .collect();
    // the core gets half the error budget, tail chunk k gets 2^-(k+2) of it
    let core_est = adaptive(f, &breaks, &rule.scaled(0.5), 0.5 * abs_floor)?;
    let mut value = core_est.value;
    let mut error = core_est.error;
    let mut evaluations = core_est.evaluations;
    let mut converged = core_est.converged;
    let clip = rule.abs_tol / 100.0;
    let budget = rule.target(value.magnitude()).max(abs_floor);

    for direction in [-1.0, 1.0] {
        let mut edge = if direction < 0.0 { lo } else { hi };
        let mut len = width;
        let mut done = false;
        for k in 0..MAX_TAIL_CHUNKS {
            let next = edge + direction * len;
            let (a, b) = if direction < 0.0 { (next, edge) } else { (edge, next) };
            let share = 0.25 * 0.5f64.powi(k.min(20) as i32);
            let chunk_rule = QuadratureRule {
                abs_tol: budget * share,
                rel_tol: rule.rel_tol * 0.25,
                max_refinements: rule.max_refinements,
            };
            let chunk = adaptive(f, &[a, b], &chunk_rule, 0.0)?;
            value = value + chunk.value;
            error += chunk.error;
            evaluations += chunk.evaluations;
            converged &= chunk.converged;
            let far = eval_checked(f, next)?.magnitude();
            evaluations += 1;
            edge = next;
            if chunk.value.magnitude() <= clip && far <= clip {
                done = true;
                break;
            }
            len *= 2.0;
        }
        converged &= done;
    }
    Ok(Estimate {
        value,
        error,
        evaluations,
        converged: converged && error <= rule.target(value.magnitude()).max(abs_floor),
    })
}

/// Finite interval with interior break points where the integrand is not smooth.
pub fn integrate_breaks<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: F,
    breaks: &[f64],
    rule: &QuadratureRule,
) -> Result<Estimate<T>> {
    if breaks.len() < 2 || breaks.iter().any(|b| !b.is_finite()) {
        return Err(Error::Domain("need at least two finite break points".into()));
    }
    let mut sorted = breaks.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    if sorted.len() < 2 {
        return Ok(Estimate {
            value: T::zero(),
            error: 0.0,
            evaluations: 0,
            converged: true,
        });
    }
    adaptive(&f, &sorted, rule, 0.0)
}

/// `∫₀^∞ f(s) ds/s`, computed as `∫ f(eᵘ) du` with exponentially clipped tails.
/// `log_core` is the range of `u = ln s` holding most of the mass.
pub fn integrate_haar_positive<T: QuadValue, F: Fn(f64) -> Result<T>>(
    f: F,
    log_core: (f64, f64),
    rule: &QuadratureRule,
) -> Result<Estimate<T>> {
    integrate_try(|u| f(u.exp()), Domain::ExpTails { core: log_core }, rule)
}

#[derive(Clone, Copy)]
struct Tracked<T> {
    value: T,
    error: f64,
}

impl<T: QuadValue> Add for Tracked<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            value: self.value + o.value,
            error: self.error + o.error,
        }
    }
}
impl<T: QuadValue> Sub for Tracked<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            value: self.value - o.value,
            error: self.error - o.error,
        }
    }
}
impl<T: QuadValue> Mul<f64> for Tracked<T> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self {
            value: self.value * s,
            error: self.error * s.abs(),
        }
    }
}
impl<T: QuadValue> QuadValue for Tracked<T> {
    fn zero() -> Self {
        Self {
            value: T::zero(),
            error: 0.0,
        }
    }
    fn magnitude(self) -> f64 {
        self.value.magnitude()
    }
    fn is_finite(self) -> bool {
        self.value.is_finite() && self.error.is_finite()
    }
}

/// Nested two-dimensional integral `∫_outer ∫_inner(x) f(x, y) dy dx`.
///
/// The inner integrals run at a tenth of the outer tolerance; their error
/// estimates are integrated alongside the values and added to the outer one.
pub fn integrate_2d<T, F, D>(f: F, outer: Domain, inner: D, rule: &QuadratureRule) -> Result<Estimate<T>>
where
    T: QuadValue,
    F: Fn(f64, f64) -> Result<T>,
    D: Fn(f64) -> Domain,
{
    let inner_rule = rule.scaled(0.1);
    let inner_ok = Cell::new(true);
    let inner_evals = Cell::new(0usize);
    let g = |x: f64| -> Result<Tracked<T>> {
        let est = integrate_try(|y| f(x, y), inner(x), &inner_rule)?;
        inner_evals.set(inner_evals.get() + est.evaluations);
        if !est.converged {
            inner_ok.set(false);
        }
        Ok(Tracked {
            value: est.value,
            error: est.error,
        })
    };
    let est = integrate_try(g, outer, rule)?;
    let error = est.error + est.value.error.abs();
    Ok(Estimate {
        value: est.value.value,
        error,
        evaluations: est.evaluations + inner_evals.get(),
        converged: est.converged && inner_ok.get() && error <= rule.target(est.value.value.magnitude()) * 1.5,
    })
}
