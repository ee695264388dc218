//! Cross-checks of the library against closed forms, frozen reference
//! values and the structural identities of the operators.
//!
//! Every check produces a residual and the tolerance it is held to; a check
//! passes when `residual ≤ tolerance`. Checks that fail to evaluate (for
//! instance a quadrature that does not converge) are reported as failed with
//! an infinite residual.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{
    convolution_function, convolve, hs_norm_sq, plancherel_kernel, GroupElement, GroupFunction, HsKernel, KernelLayout,
    LogGaussian, Sign, SupportBox,
};
use crate::numerics::{eigenvalues, fourier_half_line, integrate_2d, Domain, QuadratureRule, Trig};
use crate::symbols::{
    mellin_transform_numeric, norm_bound, sample_curve, sigma_point, MembershipTolerance, SpectrumRegion, WedgeParams,
};
use crate::wedge_operators::{
    a_alpha, adjoint_double_layer_kernel, apply_k, apply_s, containment, double_layer_kernel, k_alpha,
    k_image_weighted_norm_sq, nystrom_t, plemelj_residual, single_layer_energy, t_kernel, toeplitz_section,
    wedge_kernel_function, weighted_l1_norm, weighted_wedge_kernel, BoundaryDensity, Sheet,
};

/// Angles of the reference parameter grid.
pub const GRID_ALPHAS: [f64; 5] = [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 1.5 * PI, 5.0 * PI / 3.0];
/// Weights of the reference parameter grid.
pub const GRID_WEIGHTS: [f64; 6] = [-0.5, 0.0, 0.5, 1.0, 1.5, 2.5];
/// Frequencies of the reference parameter grid.
pub const GRID_XIS: [f64; 9] = [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0];

/// `convolve(e^{−(ln x)² − z²}, k_{π/2})` at `(1, 0)`.
pub const REF_CONVOLVE: f64 = -0.115_858_762_317_79;
/// `apply_k` at `(1, 0)`, `α = π/2`, for [`reference_gaussian_density`].
pub const REF_APPLY_K: [f64; 2] = [-0.092_270_637_814_628_85, -0.115_858_762_317_79];
/// `apply_s` at `(1, 0)`, `α = π/2`, for the first sheet pair of [`mean_zero_densities`].
pub const REF_APPLY_S: [f64; 2] = [0.093_732_704_672_68, -0.028_213_788_428_25];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Symbols,
    Group,
    Operators,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Symbols => "symbols",
            Suite::Group => "group",
            Suite::Operators => "operators",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbols" => Ok(Suite::Symbols),
            "group" => Ok(Suite::Group),
            "operators" => Ok(Suite::Operators),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite {other:?}; expected symbols, group, operators or all"
            ))),
        }
    }
}

/// A named check with its tolerance.
#[derive(Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    pub tolerance: f64,
    run: fn() -> Result<Outcome>,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check")
            .field("name", &self.name)
            .field("suite", &self.suite)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

struct Outcome {
    residual: f64,
    detail: String,
}

fn outcome(residual: f64, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        residual,
        detail: detail.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub suite: Suite,
    pub tolerance: f64,
    /// Infinite when the check could not be evaluated.
    pub residual: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn run(&self) -> CheckResult {
        let (residual, detail) = match (self.run)() {
            Ok(o) => (o.residual, o.detail),
            Err(e) => (f64::INFINITY, format!("evaluation failed: {e}")),
        };
        CheckResult {
            name: self.name,
            suite: self.suite,
            tolerance: self.tolerance,
            residual,
            passed: residual <= self.tolerance,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

const fn check(name: &'static str, suite: Suite, tolerance: f64, run: fn() -> Result<Outcome>) -> Check {
    Check {
        name,
        suite,
        tolerance,
        run,
    }
}

const CHECKS: &[Check] = &[
    check(
        "mellin-symbol-vs-quadrature",
        Suite::Symbols,
        1e-8,
        mellin_symbol_vs_quadrature,
    ),
    check("mellin-l1-vs-norm-bound", Suite::Symbols, 1e-8, mellin_l1_vs_norm_bound),
    check(
        "symbol-conjugation-symmetry",
        Suite::Symbols,
        1e-13,
        symbol_conjugation_symmetry,
    ),
    check("symbol-weight-duality", Suite::Symbols, 1e-13, symbol_weight_duality),
    check("symbol-maximum-at-zero", Suite::Symbols, 1e-13, symbol_maximum_at_zero),
    check("symbol-tail-decay", Suite::Symbols, 1e-6, symbol_tail_decay),
    check("symbol-half-plane", Suite::Symbols, 0.0, symbol_half_plane),
    check("curve-conjugate-mirror", Suite::Symbols, 0.0, curve_conjugate_mirror),
    check("curve-chord-spacing", Suite::Symbols, 1e-3, curve_chord_spacing),
    check("curve-tail-monotone", Suite::Symbols, 0.0, curve_tail_monotone),
    check("curve-extreme-real-part", Suite::Symbols, 1e-9, curve_extreme_real_part),
    check("winding-orientation", Suite::Symbols, 0.0, winding_orientation),
    check("ray-crossing-parity", Suite::Symbols, 0.0, ray_crossing_parity),
    check("curve-monotonicity-in-a", Suite::Symbols, 0.0, curve_monotonicity_in_a),
    check("group-axioms", Suite::Group, 1e-14, group_axioms),
    check(
        "haar-modulus-multiplicative",
        Suite::Group,
        1e-15,
        haar_modulus_multiplicative,
    ),
    check("haar-right-invariance", Suite::Group, 1e-9, haar_right_invariance),
    check("hs-norm-separable", Suite::Group, 1e-9, hs_norm_separable),
    check("plancherel-isometry", Suite::Group, 1e-4, plancherel_isometry),
    check(
        "plancherel-isometry-family",
        Suite::Group,
        1e-4,
        plancherel_isometry_family,
    ),
    check(
        "convolution-reference-value",
        Suite::Group,
        1e-9,
        convolution_reference_value,
    ),
    check(
        "convolution-approximate-identity",
        Suite::Group,
        1e-3,
        convolution_approximate_identity,
    ),
    check("young-inequality", Suite::Group, 1.0, young_inequality),
    check(
        "convolution-theorem-bound",
        Suite::Group,
        1.0,
        convolution_theorem_bound,
    ),
    check("kernel-evenness", Suite::Operators, 0.0, kernel_evenness),
    check("kernel-sign", Suite::Operators, 0.0, kernel_sign),
    check(
        "adjoint-weight-identity",
        Suite::Operators,
        1e-15,
        adjoint_weight_identity,
    ),
    check(
        "t-kernel-bessel-consistency",
        Suite::Operators,
        1e-8,
        t_kernel_bessel_consistency,
    ),
    check("t-kernel-small-r-limit", Suite::Operators, 1e-6, t_kernel_small_r_limit),
    check("wedge-l1-norm-formula", Suite::Operators, 1e-8, wedge_l1_norm_formula),
    check("toeplitz-row-sum", Suite::Operators, 1e-8, toeplitz_row_sum),
    check("toeplitz-containment", Suite::Operators, 0.05, toeplitz_containment),
    check("nystrom-containment", Suite::Operators, 0.05, nystrom_containment),
    check(
        "nystrom-spectral-radius",
        Suite::Operators,
        0.02,
        nystrom_spectral_radius,
    ),
    check(
        "apply-k-reference-value",
        Suite::Operators,
        1e-9,
        apply_k_reference_value,
    ),
    check(
        "apply-s-reference-value",
        Suite::Operators,
        1e-9,
        apply_s_reference_value,
    ),
    check("k-weighted-norm-bound", Suite::Operators, 1.02, k_weighted_norm_bound),
    check("plemelj-residual", Suite::Operators, 1e-3, plemelj_check),
    check(
        "single-layer-positivity",
        Suite::Operators,
        0.0,
        single_layer_positivity,
    ),
];

/// The checks belonging to `suite`, in report order.
pub fn checks(suite: Suite) -> Vec<Check> {
    CHECKS.iter().copied().filter(|c| suite.includes(c.suite)).collect()
}

/// Looks a check up by name.
pub fn find_check(name: &str) -> Option<Check> {
    CHECKS.iter().copied().find(|c| c.name == name)
}

pub fn run(suite: Suite) -> Report {
    Report {
        suite,
        checks: checks(suite).iter().map(Check::run).collect(),
    }
}

fn rule(tol: f64) -> QuadratureRule {
    QuadratureRule::new(tol, tol, 4000).expect("static tolerances are valid")
}

fn grid_params() -> Result<Vec<WedgeParams>> {
    let mut out = Vec::new();
    for &alpha in &GRID_ALPHAS {
        for &a in &GRID_WEIGHTS {
            out.push(WedgeParams::new(alpha, a)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- fixtures

/// `scale·(1 − ρ²/w²)⁴` for `ρ < w`, `ρ` the distance to `c` in `(x, z)`, as a
/// compactly supported sheet. Its integral is `scale·πw²/5`.
pub fn bump_sheet(c: (f64, f64), w: f64, scale: f64) -> Result<Sheet> {
    Sheet::compact(
        move |x, z| {
            let r2 = ((x - c.0).powi(2) + (z - c.1).powi(2)) / (w * w);
            Complex64::new(if r2 < 1.0 { scale * (1.0 - r2).powi(4) } else { 0.0 }, 0.0)
        },
        (c.0 - w, c.0 + w),
        (c.1 - w, c.1 + w),
    )
}

fn balanced_pair(c1: (f64, f64), w1: f64, c2: (f64, f64), w2: f64, a: f64) -> Result<BoundaryDensity> {
    let f1 = bump_sheet(c1, w1, 1.0)?;
    let f2 = bump_sheet(c2, w2, -(w1 / w2).powi(2))?;
    BoundaryDensity::new(f1, f2, a)?.with_mean_zero(&rule(1e-12))
}

/// Compactly supported real mean-zero densities: a positive bump on one sheet
/// balanced by a negative bump on the other, or balanced bumps on one sheet.
pub fn mean_zero_densities() -> Result<Vec<BoundaryDensity>> {
    let same_sheet = {
        let plus = bump_sheet((0.9, -0.2), 0.3, 1.0)?;
        let minus = bump_sheet((1.6, 0.4), 0.3, -1.0)?;
        let sheet = Sheet::compact(move |x, z| plus.eval(x, z) + minus.eval(x, z), (0.6, 1.9), (-0.5, 0.7))?;
        BoundaryDensity::new(sheet, Sheet::zero(), 0.0)?.with_mean_zero(&rule(1e-12))?
    };
    Ok(vec![
        balanced_pair((1.0, 0.0), 0.5, (1.2, 0.3), 0.4, 0.0)?,
        balanced_pair((0.8, 0.5), 0.3, (1.5, -0.2), 0.3, 0.0)?,
        balanced_pair((2.0, 1.0), 0.6, (0.7, -0.6), 0.4, 0.0)?,
        same_sheet,
    ])
}

/// The fixed density pairs of the Plemelj check.
pub fn plemelj_pairs() -> Result<Vec<(BoundaryDensity, BoundaryDensity)>> {
    let d = mean_zero_densities()?;
    Ok(vec![
        (d[0].clone(), d[1].clone()),
        (d[1].clone(), d[2].clone()),
        (d[2].clone(), d[3].clone()),
    ])
}

/// Gaussian test functions on the group for the Plancherel identity.
pub fn plancherel_test_functions() -> Vec<LogGaussian> {
    let s = LogGaussian::standard();
    vec![
        s,
        LogGaussian {
            mu: 0.4,
            sigma: 0.7,
            tau: 1.3,
            ..s
        },
        LogGaussian {
            amplitude: Complex64::new(0.5, -1.2),
            mu: -0.8,
            nu: 1.5,
            ..s
        },
        LogGaussian {
            sigma: 1.5,
            tau: 0.6,
            freq: 0.4,
            ..s
        },
        LogGaussian {
            amplitude: Complex64::new(2.0, 0.0),
            mu: 1.1,
            sigma: 0.5,
            nu: -0.7,
            tau: 2.0,
            freq: -0.25,
        },
    ]
}

/// `f₁ = e^{−(ln x)² − z²}`, `f₂ = e^{−2(ln x − 0.3)² − (z − 0.5)²}`.
pub fn reference_gaussian_density(a: f64) -> Result<BoundaryDensity> {
    let f2 = LogGaussian {
        mu: 0.3,
        sigma: 0.5f64.sqrt(),
        nu: 0.5,
        ..LogGaussian::standard()
    };
    BoundaryDensity::new(Sheet::gaussian(LogGaussian::standard()), Sheet::gaussian(f2), a)
}

/// `Σ± ‖P_± f‖²_{S₂}` and `‖f‖²_{L²(G)}` for a group function.
pub fn plancherel_pair(f: &GroupFunction, rule: &QuadratureRule) -> Result<(f64, f64)> {
    let mut hs = 0.0;
    for sign in [Sign::Plus, Sign::Minus] {
        hs += hs_norm_sq(&plancherel_kernel(f, sign, rule)?, rule)?.require_converged()?;
    }
    Ok((hs, f.l2_norm_sq(rule)?.require_converged()?))
}

// ----------------------------------------------------------------- symbols

fn mellin_symbol_vs_quadrature() -> Result<Outcome> {
    let r = rule(1e-11);
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        for &xi in &GRID_XIS {
            let q = mellin_transform_numeric(&p, xi, &r)?.require_converged()?;
            worst = worst.max((q - sigma_point(&p, xi)).norm());
        }
    }
    outcome(worst, format!("max deviation over {} grid points", 30 * GRID_XIS.len()))
}

fn mellin_l1_vs_norm_bound() -> Result<Outcome> {
    // i_{α,a} has constant sign, so its L¹ norm is |M i(0)|
    let r = rule(1e-11);
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        let q = mellin_transform_numeric(&p, 0.0, &r)?.require_converged()?;
        worst = worst.max((q.norm() - norm_bound(&p)).abs());
    }
    outcome(worst, "max |‖i‖₁ − norm bound| over the parameter grid")
}

fn dense_xis() -> Vec<f64> {
    (-400..=400).map(|j| j as f64 * 0.025).collect()
}

fn symbol_conjugation_symmetry() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        for xi in dense_xis() {
            worst = worst.max((sigma_point(&p, -xi) - sigma_point(&p, xi).conj()).norm());
        }
    }
    outcome(worst, "max |σ(−ξ) − conj σ(ξ)|")
}

fn symbol_weight_duality() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        let dual = p.with_weight(2.0 - p.a())?;
        for xi in dense_xis() {
            worst = worst.max((sigma_point(&dual, xi) - sigma_point(&p, xi).conj()).norm());
        }
    }
    outcome(worst, "max |σ_{α,2−a}(ξ) − conj σ_{α,a}(ξ)|")
}

fn symbol_maximum_at_zero() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        let peak = sigma_point(&p, 0.0).norm();
        worst = worst.max((peak - norm_bound(&p)).abs());
        for xi in dense_xis() {
            worst = worst.max(sigma_point(&p, xi).norm() - peak);
        }
    }
    outcome(worst, "max excess of |σ(ξ)| over |σ(0)|, and ||σ(0)| − norm bound|")
}

fn symbol_tail_decay() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        if p.decay_rate() < PI / 6.0 {
            continue;
        }
        for xi in [50.0, 60.0, 100.0, 500.0, 1e4] {
            worst = worst.max(sigma_point(&p, xi).norm()).max(sigma_point(&p, -xi).norm());
        }
    }
    outcome(worst, "max |σ(ξ)| for |ξ| ≥ 50")
}

fn symbol_half_plane() -> Result<Outcome> {
    let mut violations = 0usize;
    let mut total = 0usize;
    for p in grid_params()? {
        let side = if p.alpha() < PI { -1.0 } else { 1.0 };
        let curve = sample_curve(&p, 1e-3)?;
        for s in curve.samples() {
            if s.value.norm() == 0.0 {
                continue;
            }
            total += 1;
            if !(s.value.re * side > 0.0) {
                violations += 1;
            }
        }
    }
    outcome(
        violations as f64,
        format!("{violations} of {total} samples on the wrong side"),
    )
}

fn curve_conjugate_mirror() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        let curve = sample_curve(&p, 1e-3)?;
        let samples = curve.samples();
        let n = samples.len();
        for i in 0..n {
            let (a, b) = (samples[i], samples[n - 1 - i]);
            worst = worst.max((a.xi + b.xi).abs()).max((a.value - b.value.conj()).norm());
        }
    }
    outcome(worst, "max mismatch between the ξ and −ξ samples")
}

fn curve_chord_spacing() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        let curve = sample_curve(&p, 1e-3)?;
        for (a, b) in curve.edges() {
            worst = worst.max((a - b).norm());
        }
    }
    outcome(worst, "longest chord of the closed polyline at tol 1e-3")
}

fn curve_tail_monotone() -> Result<Outcome> {
    let mut increases = 0usize;
    for p in grid_params()? {
        let curve = sample_curve(&p, 1e-3)?;
        let peak = sigma_point(&p, 0.0).norm();
        let tail: Vec<f64> = curve
            .samples()
            .iter()
            .filter(|s| s.xi >= 0.0)
            .map(|s| s.value.norm())
            .skip_while(|&m| m > 1e-2 * peak)
            .collect();
        increases += tail.windows(2).filter(|w| w[1] > w[0]).count();
        if let Some(last) = tail.last() {
            if *last >= 1e-4 {
                increases += 1;
            }
        }
    }
    outcome(
        increases as f64,
        "increases of |σ| past the point where it drops below 1% of its peak",
    )
}

fn curve_extreme_real_part() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 3.0, 0.0)?;
    let curve = sample_curve(&p, 1e-3)?;
    let extreme = curve
        .samples()
        .iter()
        .max_by(|a, b| a.value.re.abs().total_cmp(&b.value.re.abs()))
        .ok_or_else(|| Error::Precondition("empty curve".into()))?;
    let target = (PI / 3.0).sin();
    let mut residual = (extreme.value.re.abs() - target).abs();
    if extreme.xi != 0.0 {
        residual = residual.max(extreme.xi.abs());
    }
    outcome(
        residual,
        format!(
            "max |Re| = {:.12} at ξ = {}, target sin(π/3)",
            extreme.value.re.abs(),
            extreme.xi
        ),
    )
}

fn winding_orientation() -> Result<Outcome> {
    let lambda = Complex64::new(-0.4, 0.0);
    let plus = sample_curve(&WedgeParams::new(PI / 3.0, 0.0)?, 1e-3)?.winding_number(lambda)?;
    let minus = sample_curve(&WedgeParams::new(PI / 3.0, 2.0)?, 1e-3)?.winding_number(lambda)?;
    outcome(
        ((plus - 1).abs() + (minus + 1).abs()) as f64,
        format!("winding at −0.4: {plus} for a = 0 (want 1), {minus} for a = 2 (want −1)"),
    )
}

fn ray_crossing_parity() -> Result<Outcome> {
    let curve = sample_curve(&WedgeParams::new(PI / 3.0, 0.0)?, 1e-3)?;
    let n = curve.ray_crossings(Complex64::new(-0.4, 0.0));
    outcome((n % 2 == 0) as u8 as f64, format!("{n} crossings of the ray from −0.4"))
}

fn curve_monotonicity_in_a() -> Result<Outcome> {
    let weights = [1.0, 1.5, 2.0, 2.5];
    let xis = [0.0, 0.3, -0.3, 1.0, -1.0, 2.0, -2.0];
    let mut misses = 0usize;
    let mut total = 0usize;
    for &alpha in &[PI / 3.0, PI / 2.0, 1.5 * PI] {
        for (i, &a) in weights.iter().enumerate() {
            for &b in &weights[i + 1..] {
                let inner = WedgeParams::new(alpha, a)?;
                let outer = sample_curve(&WedgeParams::new(alpha, b)?, 1e-4)?;
                for &xi in &xis {
                    total += 1;
                    if outer.winding_number(sigma_point(&inner, xi))? == 0 {
                        misses += 1;
                    }
                }
            }
        }
    }
    outcome(
        misses as f64,
        format!("{misses} of {total} points of Σ_a outside Σ_a' for a < a'"),
    )
}

// ------------------------------------------------------------------- group

fn random_element(rng: &mut ChaCha8Rng) -> Result<GroupElement> {
    GroupElement::new(rng.gen_range(-2.0f64..2.0).exp(), rng.gen_range(-3.0..3.0))
}

fn element_distance(g: GroupElement, h: GroupElement) -> f64 {
    let scale = 1.0 + g.x().abs().max(g.z().abs());
    ((g.x() - h.x()).abs() + (g.z() - h.z()).abs()) / scale
}

fn group_axioms() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (g, h, k) = (
            random_element(&mut rng)?,
            random_element(&mut rng)?,
            random_element(&mut rng)?,
        );
        worst = worst.max(element_distance((g * h) * k, g * (h * k)));
        worst = worst.max(element_distance(g * g.inverse(), GroupElement::IDENTITY));
        worst = worst.max(element_distance(g.inverse() * g, GroupElement::IDENTITY));
        worst = worst.max(element_distance(g * GroupElement::IDENTITY, g));
    }
    outcome(worst, "associativity, inverse and identity laws on 1000 random triples")
}

fn haar_modulus_multiplicative() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (g, h) = (random_element(&mut rng)?, random_element(&mut rng)?);
        let lhs = (g * h).haar_modulus();
        worst = worst.max((lhs - g.haar_modulus() * h.haar_modulus()).abs() / lhs);
    }
    outcome(worst, "relative defect of Δ(gh) = Δ(g)Δ(h)")
}

/// Smooth bump in `(log x, z)` supported on the given box.
pub fn compact_test_function(center: (f64, f64), width: (f64, f64)) -> Result<GroupFunction> {
    let b = SupportBox::new(
        (center.0 - width.0, center.0 + width.0),
        (center.1 - width.1, center.1 + width.1),
    )?;
    GroupFunction::compact(
        move |x, z| {
            let u = (x.ln() - center.0) / width.0;
            let v = (z - center.1) / width.1;
            let r2 = u * u + v * v;
            Complex64::new(
                if r2 < 1.0 {
                    (1.0 - r2).powi(4) * (1.0 + 0.5 * u)
                } else {
                    0.0
                },
                0.0,
            )
        },
        b,
    )
}

fn haar_right_invariance() -> Result<Outcome> {
    let f = compact_test_function((0.2, -0.3), (0.8, 1.1))?;
    let r = rule(1e-11);
    let base = f.haar_integral(&r)?.require_converged()?;
    let mut worst: f64 = 0.0;
    for (x, z) in [(2.0, 1.0), (0.3, -2.5), (5.0, 0.0)] {
        let moved = f.right_translate(GroupElement::new(x, z)?)?;
        let b = moved
            .support()
            .ok_or_else(|| Error::Precondition("translate lost its support".into()))?;
        // padded ranges, so the nodes do not line up with those of the original
        let v = integrate_2d(
            |u, z| moved.eval_xz(u.exp(), z),
            Domain::Interval(b.log_x.0 - 0.3, b.log_x.1 + 0.2),
            |u| {
                let (lo, hi) = b.z_range(u.exp());
                Domain::Interval(lo - 0.45, hi + 0.3)
            },
            &r,
        )?
        .require_converged()?;
        worst = worst.max((v - base).norm());
    }
    outcome(
        worst,
        format!("∬ f dx/x dz = {:.12}, max change under right translation", base.re),
    )
}

fn hs_norm_separable() -> Result<Outcome> {
    let eval = std::sync::Arc::new(|r: f64, w: f64| {
        let (u, v) = (r.ln(), w.ln());
        Ok(Complex64::new((-u * u - v * v).exp(), 0.0))
    });
    let kappa = HsKernel::new(
        eval,
        Sign::Plus,
        KernelLayout::Separate {
            log_r: (-4.0, 4.0),
            log_w: (-4.0, 4.0),
        },
    );
    let v = hs_norm_sq(&kappa, &rule(1e-11))?.require_converged()?;
    outcome((v - PI / 2.0).abs(), format!("‖κ‖² = {v:.14}, want π/2"))
}

fn plancherel_isometry() -> Result<Outcome> {
    let f = GroupFunction::gaussian(LogGaussian::standard())?;
    let (hs, _) = plancherel_pair(&f, &rule(1e-8))?;
    outcome(
        (hs - PI / 2.0).abs() / (PI / 2.0),
        format!("Σ± ‖P± f‖² = {hs:.12}, want π/2 (relative residual)"),
    )
}

fn plancherel_isometry_family() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for g in plancherel_test_functions() {
        let f = GroupFunction::gaussian(g)?;
        let (hs, l2) = plancherel_pair(&f, &rule(1e-8))?;
        worst = worst.max((hs - l2).abs() / l2);
    }
    outcome(
        worst,
        "max relative |Σ± ‖P± f‖² − ‖f‖²| over the Gaussian test functions",
    )
}

fn convolution_reference_value() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let f = GroupFunction::gaussian(LogGaussian::standard())?;
    let v = convolve(&f, &wedge_kernel_function(&p), GroupElement::IDENTITY, &rule(1e-10))?;
    outcome(
        (v.re - REF_CONVOLVE).abs() + v.im.abs(),
        format!("f ⋆ k(1, 0) = {:.14}", v.re),
    )
}

fn convolution_approximate_identity() -> Result<Outcome> {
    let f = GroupFunction::gaussian(LogGaussian {
        mu: 0.2,
        nu: -0.1,
        ..LogGaussian::standard()
    })?;
    let delta = 0.02;
    let k = compact_test_function((0.0, 0.0), (delta, delta))?;
    let mass = k.haar_integral(&rule(1e-12))?.require_converged()?;
    let r = rule(1e-9);
    let mut worst: f64 = 0.0;
    for (x, z) in [(1.0, 0.0), (0.7, 0.4), (1.8, -0.9)] {
        let at = GroupElement::new(x, z)?;
        let v = convolve(&f, &k, at, &r)? / mass;
        worst = worst.max((v - f.eval(at)?).norm());
    }
    outcome(
        worst,
        format!("max |f ⋆ k_δ − f| for a normalized bump of width {delta}"),
    )
}

/// `‖f ⋆ k‖₂ / (‖f‖₂ ‖k‖₁)` for `f` the standard Gaussian and
/// `k = Δ^{−1/2} k_{π/2}`, at a coarse quadrature rule.
pub fn young_ratio(f: &GroupFunction, k: &GroupFunction, tol: f64) -> Result<f64> {
    let r = rule(tol);
    let conv = convolution_function(f, k, &r)?;
    let lhs = conv.l2_norm_sq_numeric(&r)?.require_converged()?.sqrt();
    let f2 = f.l2_norm_sq(&rule(1e-10))?.require_converged()?.sqrt();
    let k1 = k.l1_norm(&rule(1e-10))?.require_converged()?;
    Ok(lhs / (f2 * k1))
}

fn young_inequality() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let f = GroupFunction::gaussian(LogGaussian::standard())?;
    let k = weighted_wedge_kernel(&p)?;
    let ratio = young_ratio(&f, &k, 1e-2)?;
    outcome(ratio, "‖f ⋆ k‖₂ / (‖f‖₂ ‖k‖₁), k = Δ^{−1/2} k_{π/2}")
}

fn convolution_theorem_bound() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let f = GroupFunction::gaussian(LogGaussian::standard())?;
    let k = weighted_wedge_kernel(&p)?;
    let r = rule(1e-2);
    let conv = convolution_function(&f, &k, &r)?;
    let k1 = k.l1_norm(&rule(1e-10))?.require_converged()?;
    let mut worst: f64 = 0.0;
    for sign in [Sign::Plus, Sign::Minus] {
        let lhs = hs_norm_sq(&plancherel_kernel(&conv, sign, &r)?, &r)?
            .require_converged()?
            .sqrt();
        let pf = hs_norm_sq(&plancherel_kernel(&f, sign, &rule(1e-8))?, &rule(1e-8))?
            .require_converged()?
            .sqrt();
        worst = worst.max(lhs / (pf * k1));
    }
    outcome(worst, "max over signs of ‖P±(f ⋆ k)‖ / (‖P± f‖ ‖k‖₁)")
}

// --------------------------------------------------------------- operators

fn kernel_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &s in &[1e-3, 0.2, 0.9, 1.0, 1.1, 3.0, 40.0] {
        for &t in &[0.0, 1e-4, 0.3, 1.0, 7.0, 100.0] {
            out.push((s, t));
        }
    }
    out
}

fn kernel_evenness() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        for (s, t) in kernel_grid() {
            worst = worst.max((k_alpha(&p, s, t) - k_alpha(&p, s, -t)).abs());
        }
    }
    outcome(worst, "max |k(s, t) − k(s, −t)|")
}

fn kernel_sign() -> Result<Outcome> {
    let mut violations = 0usize;
    for p in grid_params()? {
        let sign = -p.alpha().sin().signum();
        for (s, t) in kernel_grid() {
            if k_alpha(&p, s, t).signum() != sign {
                violations += 1;
            }
            if !(a_alpha(&p, s, t + 0.5) > 0.0) {
                violations += 1;
            }
            let tk = t_kernel(&p, s, t + 0.1)?;
            if tk != 0.0 && tk.signum() != sign {
                violations += 1;
            }
        }
    }
    outcome(violations as f64, "sign(k_α) = sign(T) = −sign(sin α), A_α > 0")
}

fn adjoint_weight_identity() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        for _ in 0..50 {
            let x = rng.gen_range(-3.0f64..3.0).exp();
            let u = rng.gen_range(-3.0f64..3.0).exp();
            let z = rng.gen_range(-2.0..2.0);
            let v = rng.gen_range(-2.0..2.0);
            let k = double_layer_kernel(&p, x, z, u, v);
            let lhs = x * k;
            let rhs = u * double_layer_kernel(&p, u, v, x, z);
            worst = worst.max((lhs - rhs).abs() / lhs.abs());
            let adj = adjoint_double_layer_kernel(&p, x, z, u, v);
            worst = worst.max((k * (x / u) - adj).abs() / adj.abs());
        }
    }
    outcome(worst, "relative defect of x·k(x,z;u,v) = u·k(u,v;x,z)")
}

/// `(x/r)^{(a+1)/2} · 2∫₀^∞ cos(2πzr) k_α(x/r, z) dz` by oscillatory quadrature.
pub fn t_kernel_by_quadrature(p: &WedgeParams, r: f64, x: f64, rule: &QuadratureRule) -> Result<f64> {
    let s = x / r;
    let q = *p;
    let integral = fourier_half_line(|z| Ok(k_alpha(&q, s, z)), 2.0 * PI * r, Trig::Cos, rule)?.require_converged()?;
    Ok(s.powf(0.5 * (p.a() + 1.0)) * 2.0 * integral)
}

/// The `(r, x)` grid of the Bessel consistency check.
pub const T_KERNEL_GRID: [f64; 5] = [0.1, 0.3, 0.7, 1.5, 3.0];
/// The angles of the Bessel consistency check.
pub const T_KERNEL_ALPHAS: [f64; 4] = [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 1.5 * PI];

fn t_kernel_bessel_consistency() -> Result<Outcome> {
    let r_rule = rule(1e-12);
    let mut worst: f64 = 0.0;
    for &alpha in &T_KERNEL_ALPHAS {
        let p = WedgeParams::new(alpha, 0.0)?;
        for &r in &T_KERNEL_GRID {
            for &x in &T_KERNEL_GRID {
                let direct = t_kernel(&p, r, x)?;
                let quad = t_kernel_by_quadrature(&p, r, x, &r_rule)?;
                worst = worst.max((direct - quad).abs());
            }
        }
    }
    outcome(
        worst,
        "max |T(r, x) − Fourier quadrature of k_α| on a 5×5 grid, four angles",
    )
}

fn t_kernel_small_r_limit() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        for ratio in [0.3, 1.0, 2.5] {
            let r = 1e-7;
            let t = t_kernel(&p, r, ratio * r)?;
            let i = crate::wedge_operators::i_kernel(&p, r, ratio * r);
            worst = worst.max((t - i).abs() / i.abs().max(1.0));
        }
    }
    outcome(worst, "max |T(r, x) − i(r/x)| at r = 1e-7")
}

fn wedge_l1_norm_formula() -> Result<Outcome> {
    let r = rule(1e-10);
    let mut worst: f64 = 0.0;
    for p in grid_params()? {
        let v = weighted_l1_norm(&p, &r)?.require_converged()?;
        worst = worst.max((v - norm_bound(&p)).abs());
    }
    outcome(worst, "max |‖Δ^{−(a+1)/2} k_α‖₁ − norm bound| over the parameter grid")
}

fn toeplitz_row_sum() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for &(alpha, a) in &[(PI / 3.0, 0.0), (PI / 2.0, 1.0), (1.5 * PI, 0.5)] {
        let p = WedgeParams::new(alpha, a)?;
        let n = 1601;
        let m = toeplitz_section(&p, n, 0.05)?;
        let j = n / 2;
        let sum: f64 = (0..n).map(|k| m.get(j, k).re).sum();
        worst = worst.max((sum - sigma_point(&p, 0.0).re).abs());
    }
    outcome(worst, "|middle row sum − σ(0)| at h = 0.05, n = 1601")
}

fn section_stats(
    p: &WedgeParams,
    build: impl Fn(&WedgeParams) -> Result<crate::numerics::DenseMatrix>,
) -> Result<crate::wedge_operators::Containment> {
    let region = SpectrumRegion::new(p, MembershipTolerance::default())?;
    let m = build(p)?;
    containment(&eigenvalues(&m)?, &region, 0.05)
}

fn toeplitz_containment() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 3.0, 0.0)?;
    let c = section_stats(&p, |p| toeplitz_section(p, 600, 0.05))?;
    outcome(
        c.max_distance,
        format!(
            "n = 600, h = 0.05: fraction inside {}, spectral radius {:.6}",
            c.fraction_inside, c.spectral_radius
        ),
    )
}

fn nystrom_containment() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 3.0, 0.0)?;
    let c = section_stats(&p, |p| nystrom_t(p, 500, 8.0))?;
    outcome(
        c.max_distance,
        format!("n = 500, L = 8: fraction inside {}", c.fraction_inside),
    )
}

fn nystrom_spectral_radius() -> Result<Outcome> {
    let mut worst = f64::NEG_INFINITY;
    for &(alpha, a) in &[(PI / 3.0, 0.0), (PI / 2.0, 1.0), (1.5 * PI, 0.0)] {
        let p = WedgeParams::new(alpha, a)?;
        let c = section_stats(&p, |p| nystrom_t(p, 300, 8.0))?;
        worst = worst.max(c.spectral_radius - norm_bound(&p));
    }
    outcome(worst.max(0.0), "max(spectral radius − norm bound) at n = 300, L = 8")
}

fn apply_k_reference_value() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let v = apply_k(&p, &reference_gaussian_density(0.0)?, (1.0, 0.0), &rule(1e-10))?;
    let d = (0..2).map(|i| (v[i] - REF_APPLY_K[i]).norm()).fold(0.0, f64::max);
    outcome(d, format!("K f(1, 0) = ({:.14}, {:.14})", v[0].re, v[1].re))
}

fn apply_s_reference_value() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let f = &mean_zero_densities()?[0];
    let v = apply_s(&p, f, (1.0, 0.0), &rule(1e-10))?;
    let d = (0..2).map(|i| (v[i] - REF_APPLY_S[i]).norm()).fold(0.0, f64::max);
    outcome(d, format!("S f(1, 0) = ({:.14}, {:.14})", v[0].re, v[1].re))
}

fn k_weighted_norm_bound() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let f = reference_gaussian_density(0.0)?;
    let r = rule(1e-2);
    let image = k_image_weighted_norm_sq(&p, &f, &r)?.require_converged()?;
    let norm = f.weighted_norm_sq(&rule(1e-8))?;
    let ratio = (image / norm).sqrt() / norm_bound(&p);
    outcome(ratio, "‖K f‖ / (norm bound · ‖f‖) in L^{2,a}")
}

fn plemelj_check() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let (f, g) = plemelj_pairs()?.remove(0);
    let res = plemelj_residual(&p, &f, &g, &rule(1e-3))?;
    outcome(
        res.residual,
        format!("normalized |⟨Kf, Sg⟩ − ⟨Sf, Kg⟩|, quadrature error {:.2e}", res.error),
    )
}

fn single_layer_positivity() -> Result<Outcome> {
    let p = WedgeParams::new(PI / 2.0, 0.0)?;
    let mut bad = 0usize;
    let mut least = f64::INFINITY;
    for f in mean_zero_densities()? {
        let e = single_layer_energy(&p, &f, &rule(1e-3))?;
        least = least.min(e.re);
        if !(e.re > 0.0) {
            bad += 1;
        }
    }
    outcome(bad as f64, format!("smallest energy ⟨S f, f⟩ = {least:.6e}"))
}
