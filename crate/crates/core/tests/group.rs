mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use common::{params, rule};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wedge_spectra::group::{
    convolve, haar_modulus, hs_norm, hs_norm_sq, inverse, multiply, plancherel_kernel, GroupElement, GroupFunction,
    HsKernel, KernelLayout, LogGaussian, Sign,
};
use wedge_spectra::numerics::{integrate_2d, Domain};
use wedge_spectra::validation::{compact_test_function, plancherel_pair, plancherel_test_functions, young_ratio};
use wedge_spectra::wedge_operators::weighted_wedge_kernel;

// f ⋆ k_{π/2} at the identity for the standard Gaussian, from a 4000×4000
// midpoint grid on (log s, t) ∈ [−12, 12] × [−40, 40] with the kernel
// singularity excised analytically.
const CONVOLVE_REFERENCE: f64 = -0.115_858_762_317_79;

fn g(x: f64, z: f64) -> GroupElement {
    GroupElement::new(x, z).unwrap()
}

fn close(a: GroupElement, b: GroupElement, tol: f64) -> bool {
    (a.x() - b.x()).abs() <= tol * a.x().abs().max(1.0) && (a.z() - b.z()).abs() <= tol * a.z().abs().max(1.0)
}

#[test]
fn group_law_reference_values() {
    assert_eq!(multiply(g(2.0, 1.0), g(3.0, 4.0)), g(6.0, 9.0));
    assert_eq!(multiply(g(2.5, -1.0), GroupElement::IDENTITY), g(2.5, -1.0));
    assert!(close(multiply(g(6.0, 9.0), inverse(g(3.0, 4.0))), g(2.0, 1.0), 1e-15));
    assert_eq!(inverse(g(2.0, 6.0)), g(0.5, -3.0));
    assert_eq!(haar_modulus(g(2.0, 5.0)), 0.5);
    assert!(GroupElement::new(0.0, 1.0).is_err());
    assert!(GroupElement::new(-1.0, 1.0).is_err());
    assert!(GroupElement::new(1.0, f64::NAN).is_err());
}

fn element() -> impl Strategy<Value = GroupElement> {
    (-3.0f64..3.0, -5.0f64..5.0).prop_map(|(lx, z)| g(lx.exp(), z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn associativity(a in element(), b in element(), c in element()) {
        prop_assert!(close((a * b) * c, a * (b * c), 1e-13));
    }

    #[test]
    fn inverse_law(a in element()) {
        // the z component cancels terms of size |z|/x
        let scale = 1.0 + a.z().abs() / a.x();
        prop_assert!(close(a * a.inverse(), GroupElement::IDENTITY, 1e-15 * scale));
        prop_assert!(close(a.inverse() * a, GroupElement::IDENTITY, 1e-15 * scale));
        prop_assert!(close(a.inverse().inverse(), a, 1e-14));
    }

    #[test]
    fn modulus_is_multiplicative(a in element(), b in element()) {
        let lhs = haar_modulus(a * b);
        prop_assert!((lhs - haar_modulus(a) * haar_modulus(b)).abs() <= 1e-14 * lhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn haar_measure_is_right_invariant(lx in -1.5f64..1.5, z in -3.0f64..3.0) {
        let f = compact_test_function((0.3, 0.2), (0.7, 0.9)).unwrap();
        let r = rule(1e-10);
        let base = f.haar_integral(&r).unwrap().require_converged().unwrap();
        let moved = f.right_translate(g(lx.exp(), z)).unwrap();
        let b = moved.support().unwrap();
        // a box wider than the support, so the nodes are not those of `base`
        let v = integrate_2d(
            |u, t| moved.eval_xz(u.exp(), t),
            Domain::Interval(b.log_x.0 - 0.25, b.log_x.1 + 0.4),
            |u| {
                let (lo, hi) = b.z_range(u.exp());
                Domain::Interval(lo - 0.2, hi + 0.55)
            },
            &r,
        )
        .unwrap()
        .require_converged()
        .unwrap();
        prop_assert!((v - base).norm() < 1e-8, "{v} vs {base}");
    }
}

#[test]
fn hs_norm_of_separable_gaussian() {
    let eval = Arc::new(|r: f64, w: f64| {
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
    let n = hs_norm(&kappa, &rule(1e-11)).unwrap().require_converged().unwrap();
    assert!((n - (PI / 2.0).sqrt()).abs() < 1e-9, "{n}");

    let zero = HsKernel::new(
        Arc::new(|_, _| Ok(Complex64::new(0.0, 0.0))),
        Sign::Minus,
        KernelLayout::Separate {
            log_r: (-1.0, 1.0),
            log_w: (-1.0, 1.0),
        },
    );
    assert_eq!(hs_norm(&zero, &rule(1e-8)).unwrap().value, 0.0);
}

#[test]
fn plancherel_for_the_standard_gaussian() {
    let f = GroupFunction::gaussian(LogGaussian::standard()).unwrap();
    let r = rule(1e-8);
    let plus = hs_norm_sq(&plancherel_kernel(&f, Sign::Plus, &r).unwrap(), &r)
        .unwrap()
        .require_converged()
        .unwrap();
    let minus = hs_norm_sq(&plancherel_kernel(&f, Sign::Minus, &r).unwrap(), &r)
        .unwrap()
        .require_converged()
        .unwrap();
    assert!(((plus + minus) - PI / 2.0).abs() / (PI / 2.0) < 1e-4);
    // a real even function splits evenly between the two signs
    assert!((plus - minus).abs() < 1e-6, "{plus} vs {minus}");
    assert!((plus.sqrt() - (PI / 2.0 - minus).sqrt()).abs() < 1e-4);
}

#[test]
fn plancherel_isometry_on_gaussian_family() {
    let r = rule(1e-8);
    for lg in plancherel_test_functions() {
        let f = GroupFunction::gaussian(lg).unwrap();
        let (hs, l2) = plancherel_pair(&f, &r).unwrap();
        assert!(((hs - lg.l2_norm_sq()) / l2).abs() < 1e-4, "{lg:?}: {hs} vs {l2}");
    }
}

#[test]
fn closed_form_l2_norm_matches_quadrature() {
    let r = rule(1e-10);
    for lg in plancherel_test_functions() {
        let f = GroupFunction::gaussian(lg).unwrap();
        let numeric = f.l2_norm_sq_numeric(&r).unwrap().require_converged().unwrap();
        assert!((numeric - lg.l2_norm_sq()).abs() < 1e-8 * lg.l2_norm_sq(), "{lg:?}");
    }
}

#[test]
fn convolution_with_the_wedge_kernel_reference_value() {
    let f = GroupFunction::gaussian(LogGaussian::standard()).unwrap();
    let k = wedge_spectra::wedge_operators::wedge_kernel_function(&params(PI / 2.0, 0.0));
    let v = convolve(&f, &k, GroupElement::IDENTITY, &rule(1e-10)).unwrap();
    assert!((v.re - CONVOLVE_REFERENCE).abs() < 1e-9 && v.im.abs() < 1e-12, "{v}");
}

#[test]
fn narrow_bump_is_an_approximate_identity() {
    let f = GroupFunction::gaussian(LogGaussian {
        mu: -0.3,
        tau: 1.4,
        ..LogGaussian::standard()
    })
    .unwrap();
    let width = 0.01;
    let k = compact_test_function((0.0, 0.0), (width, width)).unwrap();
    let mass = k.haar_integral(&rule(1e-12)).unwrap().require_converged().unwrap();
    for at in [g(1.0, 0.0), g(0.5, 1.0), g(2.0, -0.7)] {
        let v = convolve(&f, &k, at, &rule(1e-9)).unwrap() / mass;
        assert!((v - f.eval(at).unwrap()).norm() < 10.0 * width, "{at:?}");
    }
}

#[test]
fn convolution_needs_a_support() {
    let k = weighted_wedge_kernel(&params(PI / 2.0, 0.0)).unwrap();
    assert!(convolve(&k, &k, GroupElement::IDENTITY, &rule(1e-6)).is_err());
}

#[test]
fn young_bound_on_seeded_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..3 {
        let f = GroupFunction::gaussian(LogGaussian {
            amplitude: Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)),
            mu: rng.gen_range(-0.5..0.5),
            sigma: rng.gen_range(0.6..1.4),
            nu: rng.gen_range(-0.5..0.5),
            tau: rng.gen_range(0.6..1.4),
            freq: 0.0,
        })
        .unwrap();
        let k = if trial == 0 {
            weighted_wedge_kernel(&params(2.0 * PI / 3.0, 0.0)).unwrap()
        } else {
            let c = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            compact_test_function(c, (rng.gen_range(0.3..0.8), rng.gen_range(0.3..0.8))).unwrap()
        };
        let ratio = young_ratio(&f, &k, 1e-2).unwrap();
        assert!(ratio <= 1.0, "trial {trial}: ratio {ratio}");
        assert!(ratio > 0.0);
    }
}
