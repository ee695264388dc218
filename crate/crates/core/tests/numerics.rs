mod common;

use std::f64::consts::PI;

use common::{char_poly_3, cubic_roots, multiset_distance, rule};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wedge_spectra::numerics::{
    bessel_k1, eigenvalues, integrate, integrate_try, DenseMatrix, Domain, QuadratureRule, DIMENSION_CAP,
};
use wedge_spectra::Error;

// Reference values of K₁ to 20 digits.
const K1_TABLE: [(f64, f64); 7] = [
    (1.0, 0.601_907_230_197_234_574_7),
    (0.01, 99.973_894_118_296_245_56),
    (2.0, 0.139_865_881_816_522_427_28),
    (10.0, 1.864_877_345_382_558_459e-5),
    (50.0, 3.444_102_226_717_555_613e-23),
    (700.0, 4.673_110_796_707_966_109e-306),
    (1e-6, 999_999.999_992_784_32),
];

#[test]
fn exponential_and_algebraic_integrals() {
    let r = rule(1e-13);
    let e = integrate(|t: f64| (-t).exp(), Domain::HalfLine(0.0), &r).unwrap();
    assert!(e.converged && (e.value - 1.0).abs() < 1e-12, "{e:?}");
    let e = integrate(|t: f64| (1.0 + t * t).powf(-1.5), Domain::RealLine, &r).unwrap();
    assert!(e.converged && (e.value - 2.0).abs() < 1e-12, "{e:?}");
}

#[test]
fn mellin_norm_integral_for_two_thirds_pi() {
    let alpha = 2.0 * PI / 3.0;
    let est = integrate(
        |u: f64| {
            let s = u.exp();
            s.sqrt() / (1.0 + s * s - 2.0 * s * alpha.cos())
        },
        Domain::ExpTails { core: (-10.0, 10.0) },
        &rule(1e-13),
    )
    .unwrap();
    assert!((est.value - 1.813_799_364_234_217_850_6).abs() < 1e-11, "{est:?}");
    assert!((alpha.sin().abs() / PI * est.value - 0.5).abs() < 1e-12);
}

#[test]
fn error_estimate_bounds_the_true_error() {
    let r = rule(1e-9);
    let cases: Vec<(Box<dyn Fn(f64) -> f64>, Domain, f64)> = vec![
        (Box::new(|t: f64| t.sin()), Domain::Interval(0.0, PI), 2.0),
        (Box::new(|t: f64| t.sqrt()), Domain::Interval(0.0, 1.0), 2.0 / 3.0),
        (Box::new(|t: f64| 1.0 / (1.0 + t * t)), Domain::RealLine, PI),
        (
            Box::new(|t: f64| (-t * t).exp()),
            Domain::ScaledRealLine(3.0),
            PI.sqrt(),
        ),
        (
            Box::new(|t: f64| t.exp() * (-t.exp()).exp()),
            Domain::ExpTails { core: (-5.0, 3.0) },
            1.0,
        ),
    ];
    for (f, d, exact) in cases {
        let e = integrate(f, d, &r).unwrap();
        assert!(e.converged, "{d:?}: {e:?}");
        assert!(e.error <= r.target(e.value.abs()), "{d:?}: {e:?}");
        assert!((e.value - exact).abs() <= e.error.max(1e-15), "{d:?}: {e:?} vs {exact}");
    }
}

#[test]
fn non_convergence_is_flagged_and_nan_is_an_error() {
    let tight = QuadratureRule::new(1e-14, 1e-14, 1).unwrap();
    let e = integrate(|t: f64| (50.0 * t).sin().abs(), Domain::Interval(0.0, 10.0), &tight).unwrap();
    assert!(!e.converged);
    assert!(matches!(e.require_converged(), Err(Error::NoConvergence { .. })));
    let r = integrate_try(|_| Ok(f64::NAN), Domain::Interval(0.0, 1.0), &rule(1e-8));
    assert!(matches!(r, Err(Error::NonFinite { .. })), "{r:?}");
    assert!(QuadratureRule::new(0.0, 1e-8, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn halving_the_tolerance_stays_within_the_coarse_estimate(
        c in 0.3f64..3.0,
        k in 0.0f64..5.0,
        shift in -2.0f64..2.0,
        tol_exp in 4i32..10,
    ) {
        let f = |t: f64| (-c * (t - shift).powi(2)).exp() * (k * t).cos();
        let coarse = rule(10f64.powi(-tol_exp));
        let fine = rule(0.5 * 10f64.powi(-tol_exp));
        let a = integrate(f, Domain::RealLine, &coarse).unwrap();
        let b = integrate(f, Domain::RealLine, &fine).unwrap();
        prop_assert!(a.converged && b.converged);
        prop_assert!((a.value - b.value).abs() <= a.error + 1e-15, "{a:?} vs {b:?}");
        let exact = (PI / c).sqrt() * (-k * k / (4.0 * c)).exp() * (k * shift).cos();
        prop_assert!((a.value - exact).abs() <= a.error + 1e-15, "{a:?} vs {exact}");
    }
}

#[test]
fn bessel_matches_reference_table() {
    for (r, want) in K1_TABLE {
        let got = bessel_k1(r).unwrap();
        assert!(((got - want) / want).abs() < 1e-10, "K1({r}) = {got:e}, want {want:e}");
    }
}

#[test]
fn bessel_domain_and_underflow() {
    assert!(matches!(bessel_k1(0.0), Err(Error::Domain(_))));
    assert!(bessel_k1(-1.0).is_err());
    assert!(bessel_k1(f64::NAN).is_err());
    let far = bessel_k1(800.0).unwrap();
    assert!(far >= 0.0 && far < 1e-300);
}

proptest! {
    #[test]
    fn bessel_small_argument_window(r in 1e-6f64..0.01) {
        // K₁(R) ~ 1/R
        let k = bessel_k1(r).unwrap();
        prop_assert!((k * r - 1.0).abs() < 0.01);
    }

    #[test]
    fn bessel_large_argument_window(r in 20.0f64..700.0) {
        // K₁(R) ~ √(π/2R) e^{−R}, relative error within 3/R
        let k = bessel_k1(r).unwrap();
        let asym = (PI / (2.0 * r)).sqrt() * (-r).exp();
        prop_assert!((k / asym - 1.0).abs() < 3.0 / r);
    }

    #[test]
    fn bessel_is_positive_and_decreasing(r in 1e-5f64..600.0) {
        let (a, b) = (bessel_k1(r).unwrap(), bessel_k1(r * 1.01).unwrap());
        prop_assert!(a > 0.0 && b < a);
    }
}

#[test]
fn eigenvalues_of_small_reference_matrices() {
    let id = DenseMatrix::identity(2).unwrap();
    let e = eigenvalues(&id).unwrap();
    assert_eq!(e.len(), 2);
    assert!(e.iter().all(|z| (z - 1.0).norm() < 1e-14));

    let companion = DenseMatrix::from_real_row_major(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
    let e = eigenvalues(&companion).unwrap();
    let want = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
    assert!(multiset_distance(&e, &want) < 1e-14, "{e:?}");
}

#[test]
fn eigenvalues_match_the_cubic_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let mut m = [[0.0; 3]; 3];
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-2.0..2.0);
            }
        }
        let flat: Vec<f64> = m.iter().flatten().copied().collect();
        let got = eigenvalues(&DenseMatrix::from_real_row_major(3, &flat).unwrap()).unwrap();
        let (b, c, d) = char_poly_3(&m);
        let want = cubic_roots(b, c, d);
        assert!(multiset_distance(&got, &want) < 1e-8, "{got:?} vs {want:?}");
    }
}

#[test]
fn dimension_limits() {
    assert!(DenseMatrix::from_row_major(0, vec![]).is_err());
    let err = DenseMatrix::identity(DIMENSION_CAP + 1).unwrap_err();
    assert!(
        matches!(err, Error::DimensionCap { .. } | Error::InvalidParameter(_)),
        "{err:?}"
    );
    assert!(DenseMatrix::from_row_major(2, vec![Complex64::new(f64::NAN, 0.0); 4]).is_err());
}

fn random_matrix(seed: u64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n * n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalue_trace_det_and_backward_error(seed in any::<u64>(), n in 1usize..=6) {
        let entries = random_matrix(seed, n);
        let m = DenseMatrix::from_row_major(n, entries.clone()).unwrap();
        let eigs = eigenvalues(&m).unwrap();
        prop_assert_eq!(eigs.len(), n);
        let norm = m.frobenius_norm();

        let sum: Complex64 = eigs.iter().sum();
        prop_assert!((sum - m.trace()).norm() <= 1e-8 * norm);

        let reference = DMatrix::from_row_slice(n, n, &entries);
        let det = reference.determinant();
        let prod: Complex64 = eigs.iter().product();
        prop_assert!((prod - det).norm() <= 1e-8 * norm.powi(n as i32).max(1.0), "{prod} vs {det}");

        for &lambda in &eigs {
            let shifted = &reference - DMatrix::<Complex64>::identity(n, n) * lambda;
            let smallest = shifted.singular_values().min();
            prop_assert!(smallest <= 1e-10 * norm.max(1.0), "σ_min = {smallest:e}");
        }
    }
}
