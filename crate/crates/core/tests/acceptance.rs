//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::error::Error as StdError;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{cli, grid, params, parse_curve_csv, rule};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wedge_spectra::group::{GroupFunction, LogGaussian};
use wedge_spectra::numerics::eigenvalues;
use wedge_spectra::symbols::{mellin_transform_numeric, norm_bound, sigma_point, MembershipTolerance, SpectrumRegion};
use wedge_spectra::transmission::{check, illposed_interval_e, Problem, TransmissionQuery};
use wedge_spectra::validation::{
    self, plancherel_pair, plancherel_test_functions, plemelj_pairs, t_kernel_by_quadrature, Suite,
};
use wedge_spectra::wedge_operators::{
    containment, nystrom_t, plemelj_residual, t_kernel, toeplitz_section, weighted_l1_norm,
};

type Outcome = Result<String, Box<dyn StdError>>;

const SYMBOL_TOL: f64 = 1e-8;
const NORM_TOL: f64 = 1e-8;
const CURVE_EXTREME_TOL: f64 = 1e-9;
const T_KERNEL_TOL: f64 = 1e-8;
const PLANCHEREL_REL_TOL: f64 = 1e-4;
const HAUSDORFF_TOL: f64 = 0.05;
const RADIUS_SLACK: f64 = 0.02;
const MONOTONE_SLACK: f64 = 1e-12;
const PLEMELJ_TOL: f64 = 1e-3;
const BISECTION_WIDTH: f64 = 1e-9;

const XIS: [f64; 9] = [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0];

fn fail(msg: String) -> Outcome {
    Err(msg.into())
}

fn symbol_identity() -> Outcome {
    let r = rule(1e-11);
    let mut worst: f64 = 0.0;
    for p in grid() {
        for xi in XIS {
            let numeric = mellin_transform_numeric(&p, xi, &r)?.require_converged()?;
            worst = worst.max((numeric - sigma_point(&p, xi)).norm());
        }
    }
    if worst < SYMBOL_TOL {
        Ok(format!("max deviation {worst:.2e} over 270 points"))
    } else {
        fail(format!("max deviation {worst:.2e}"))
    }
}

fn norm_formula() -> Outcome {
    let r = rule(1e-10);
    let mut worst: f64 = 0.0;
    for p in grid() {
        let v = weighted_l1_norm(&p, &r)?.require_converged()?;
        worst = worst.max((v - norm_bound(&p)).abs());
        if p.a() == 1.0 {
            worst = worst.max((v - (1.0 - p.alpha() / PI).abs()).abs());
        }
    }
    if worst < NORM_TOL {
        Ok(format!("max deviation {worst:.2e} over 30 parameter pairs"))
    } else {
        fail(format!("max deviation {worst:.2e}"))
    }
}

fn curve_reproduction() -> Outcome {
    let out = cli(&["curve", "--alpha-deg", "60", "--a", "0"]);
    if out.code != 0 {
        return fail(format!("curve exited with {}: {}", out.code, out.stderr));
    }
    let rows = parse_curve_csv(&out.stdout);
    let target = (PI / 3.0).sin();
    let mut report = Vec::new();
    for branch in ["plus", "minus"] {
        let b: Vec<_> = rows.iter().filter(|r| r.3 == branch).collect();
        let closure = b.last().ok_or("empty branch")?;
        if !(closure.0.is_infinite() && closure.1 == 0.0 && closure.2 == 0.0) {
            return fail(format!("{branch} branch does not close through 0"));
        }
        let finite: Vec<_> = b.iter().filter(|r| r.0.is_finite()).collect();
        let n = finite.len();
        let asym = (0..n)
            .map(|i| {
                let (u, v) = (finite[i], finite[n - 1 - i]);
                if u.0 != -v.0 {
                    f64::INFINITY
                } else {
                    (u.1 - v.1).abs().max((u.2 + v.2).abs())
                }
            })
            .fold(0.0, f64::max);
        if asym > 1e-13 {
            return fail(format!("{branch} branch is not conjugation symmetric ({asym:e})"));
        }
        let extreme = finite.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
        if (extreme - target).abs() >= CURVE_EXTREME_TOL {
            return fail(format!("{branch} extreme real part {extreme}"));
        }
        report.push(format!("{branch}: {n} points, extreme |re| {extreme:.10}"));
    }
    Ok(report.join("; "))
}

fn t_kernel_consistency() -> Outcome {
    let r = rule(1e-12);
    let pts = [0.05, 0.2, 0.5, 1.0, 2.0];
    let mut worst: f64 = 0.0;
    for alpha in [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 1.5 * PI] {
        let p = params(alpha, 0.0);
        for &rr in &pts {
            for &x in &pts {
                let d = (t_kernel(&p, rr, x)? - t_kernel_by_quadrature(&p, rr, x, &r)?).abs();
                worst = worst.max(d);
            }
        }
    }
    if worst < T_KERNEL_TOL {
        Ok(format!("max deviation {worst:.2e} over 100 points"))
    } else {
        fail(format!("max deviation {worst:.2e}"))
    }
}

fn plancherel_isometry() -> Outcome {
    let r = rule(1e-8);
    let mut worst: f64 = 0.0;
    for lg in plancherel_test_functions() {
        let f = GroupFunction::gaussian(lg)?;
        let (hs, l2) = plancherel_pair(&f, &r)?;
        worst = worst.max(((l2 - hs) / l2).abs());
    }
    let (hs, l2) = plancherel_pair(&GroupFunction::gaussian(LogGaussian::standard())?, &r)?;
    let standard = ((hs - PI / 2.0) / (PI / 2.0))
        .abs()
        .max(((l2 - PI / 2.0) / (PI / 2.0)).abs());
    if worst < PLANCHEREL_REL_TOL && standard < PLANCHEREL_REL_TOL {
        Ok(format!(
            "max relative gap {worst:.2e}; standard Gaussian {hs:.8} vs π/2"
        ))
    } else {
        fail(format!(
            "max relative gap {worst:.2e}, standard deviation from π/2 {standard:.2e}"
        ))
    }
}

fn finite_section_containment() -> Outcome {
    let cases = [(PI / 3.0, 0.0), (PI / 2.0, 0.0), (PI / 2.0, 1.0), (1.5 * PI, 0.0)];
    let mut worst_distance: f64 = 0.0;
    let mut worst_excess = f64::NEG_INFINITY;
    for (alpha, a) in cases {
        let p = params(alpha, a);
        let region = SpectrumRegion::new(&p, MembershipTolerance::default())?;
        for op in ["T", "I"] {
            let mut previous = f64::INFINITY;
            for n in [200, 400, 600] {
                let m = if op == "T" {
                    nystrom_t(&p, n, 8.0)?
                } else {
                    toeplitz_section(&p, n, 0.05)?
                };
                let c = containment(&eigenvalues(&m)?, &region, HAUSDORFF_TOL)?;
                if c.fraction_inside < 1.0 {
                    return fail(format!(
                        "{op} α={alpha:.4} a={a} n={n}: fraction inside {}",
                        c.fraction_inside
                    ));
                }
                if c.max_distance > previous + MONOTONE_SLACK {
                    return fail(format!(
                        "{op} α={alpha:.4} a={a} n={n}: max distance grew to {:e}",
                        c.max_distance
                    ));
                }
                let excess = c.spectral_radius - norm_bound(&p);
                if excess > RADIUS_SLACK {
                    return fail(format!(
                        "{op} α={alpha:.4} a={a} n={n}: spectral radius {}",
                        c.spectral_radius
                    ));
                }
                previous = c.max_distance;
                worst_distance = worst_distance.max(c.max_distance);
                worst_excess = worst_excess.max(excess);
            }
        }
    }
    Ok(format!(
        "24 sections inside; max distance {worst_distance:.2e}, max(radius − norm bound) {worst_excess:.4}"
    ))
}

fn plemelj() -> Outcome {
    let p = params(PI / 2.0, 0.0);
    let r = rule(1e-3);
    let mut worst: f64 = 0.0;
    for (f, g) in plemelj_pairs()? {
        worst = worst.max(plemelj_residual(&p, &f, &g, &r)?.residual);
    }
    if worst < PLEMELJ_TOL {
        Ok(format!("max normalized residual {worst:.2e} over 3 pairs"))
    } else {
        fail(format!("max normalized residual {worst:.2e}"))
    }
}

fn wellposed(
    eps: Complex64,
    alpha: f64,
    problem: Problem,
    a: f64,
    tol: MembershipTolerance,
) -> Result<bool, Box<dyn StdError>> {
    Ok(check(&TransmissionQuery::new(eps, alpha, problem, a)?, tol)?.wellposed)
}

fn flip(
    mut lo: f64,
    mut hi: f64,
    good: impl Fn(f64) -> Result<bool, Box<dyn StdError>>,
) -> Result<(f64, f64), Box<dyn StdError>> {
    let at_lo = good(lo)?;
    if at_lo == good(hi)? {
        return Err(format!("no verdict flip in [{lo}, {hi}]").into());
    }
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if good(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

fn transmission_oracles() -> Outcome {
    let tight = MembershipTolerance {
        tau_on: 1e-12,
        ..MembershipTolerance::default()
    };
    let good = |eps: f64| wellposed(Complex64::new(eps, 0.0), PI / 2.0, Problem::E, 1.0, tight);
    let mut ends = Vec::new();
    for ((lo, hi), want) in [((-4.0, -2.0), -3.0), ((-1.0, 0.0), -1.0 / 3.0)] {
        let (l, h) = flip(lo, hi, good)?;
        if !(l <= want + BISECTION_WIDTH && h >= want - BISECTION_WIDTH) {
            return fail(format!("flip bracket [{l}, {h}] misses {want}"));
        }
        ends.push(0.5 * (l + h));
    }
    let tol = MembershipTolerance::default();
    for eps in [-3.0, -1.0 / 3.0, -1.0] {
        if wellposed(Complex64::new(eps, 0.0), PI / 2.0, Problem::E, 1.0, tol)? {
            return fail(format!("ε = {eps} reported well posed"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ill = 0;
    for i in 0..100 {
        let alpha = loop {
            let a: f64 = rng.gen_range(0.1..2.0 * PI - 0.1);
            if (a - PI).abs() > 0.05 {
                break a;
            }
        };
        let eps = if i % 2 == 0 {
            Complex64::new(rng.gen_range(-8.0..0.5), 0.0)
        } else {
            Complex64::new(rng.gen_range(-8.0..3.0), rng.gen_range(-3.0..3.0))
        };
        let l = check(&TransmissionQuery::new(eps, alpha, Problem::L, 1.0)?, tol)?;
        let e = check(&TransmissionQuery::new(eps, alpha, Problem::E, 1.0)?, tol)?;
        if l.wellposed != e.wellposed || l.classification != e.classification {
            return fail(format!("L and E disagree at α={alpha}, ε={eps}"));
        }
        ill += usize::from(!e.wellposed);
    }
    Ok(format!(
        "flips at {:.10} and {:.10}; L(a = 1) = E on 100 random queries ({ill} ill posed)",
        ends[0], ends[1]
    ))
}

fn invariant_suite() -> Outcome {
    let report = validation::run(Suite::All);
    let failed: Vec<_> = report.failures().map(|c| c.name).collect();
    if !failed.is_empty() {
        return fail(format!("validation failures: {}", failed.join(", ")));
    }
    let total = report.checks.len();

    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let angle = (0.05f64..6.2).prop_filter("excluded angle", |a| (a - PI).abs() > 0.05);
    runner
        .run(&(angle.clone(), -0.95f64..2.95, -40.0f64..40.0), |(alpha, a, xi)| {
            let p = params(alpha, a);
            let s = sigma_point(&p, xi);
            prop_assert!((sigma_point(&p, -xi) - s.conj()).norm() <= 1e-13);
            prop_assert!((sigma_point(&p.with_weight(2.0 - a).unwrap(), xi) - s.conj()).norm() <= 1e-13);
            prop_assert!(s.norm() <= norm_bound(&p) + 1e-13);
            Ok(())
        })
        .map_err(|e| format!("symbol invariants: {e}"))?;
    runner
        .run(&(angle, -10.0f64..3.0, -5.0f64..5.0), |(alpha, re, im)| {
            let eps = Complex64::new(re, im);
            prop_assume!((eps - 1.0).norm() > 1e-3);
            let tol = MembershipTolerance::default();
            for problem in [Problem::L, Problem::E] {
                let v = wellposed(eps, alpha, problem, 0.0, tol).unwrap();
                prop_assert_eq!(v, wellposed(eps.conj(), alpha, problem, 0.0, tol).unwrap());
            }
            let (lo, hi) = illposed_interval_e(alpha).unwrap();
            prop_assert!(lo <= hi && hi < 0.0);
            Ok(())
        })
        .map_err(|e| format!("transmission invariants: {e}"))?;

    for (args, code) in [
        (
            &["check", "--alpha-deg", "90", "--eps-re", "-2", "--problem", "E"][..],
            3,
        ),
        (
            &["check", "--alpha-deg", "90", "--eps-re", "-0.2", "--problem", "E"][..],
            0,
        ),
        (&["curve", "--alpha", "3.14159"][..], 2),
    ] {
        let out = cli(args);
        if out.code != code {
            return fail(format!("{args:?} exited with {}, expected {code}", out.code));
        }
    }
    Ok(format!("{total} validation checks and 128 sampled invariants pass"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 symbol identity", Duration::from_secs(10), symbol_identity),
        ("2 norm formula", Duration::from_secs(30), norm_formula),
        ("3 curve reproduction", Duration::from_secs(20), curve_reproduction),
        (
            "4 Bessel/T-kernel consistency",
            Duration::from_secs(20),
            t_kernel_consistency,
        ),
        ("5 Plancherel isometry", Duration::from_secs(60), plancherel_isometry),
        (
            "6 finite-section containment",
            Duration::from_secs(300),
            finite_section_containment,
        ),
        ("7 Plemelj residual", Duration::from_secs(300), plemelj),
        ("8 transmission oracles", Duration::from_secs(60), transmission_oracles),
        ("9 invariant suite", Duration::from_secs(900), invariant_suite),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= budget => format!("PASS criterion {name}: {detail} [{elapsed:.1?}]"),
            Ok(detail) => format!("FAIL criterion {name}: {detail} but took {elapsed:.1?}, budget {budget:?}"),
            Err(e) => format!("FAIL criterion {name}: {e} [{elapsed:.1?}]"),
        };
        if line.starts_with("FAIL") {
            failures += 1;
        }
        println!("{line}");
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
