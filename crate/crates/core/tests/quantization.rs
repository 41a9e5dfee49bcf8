use std::f64::consts::{PI, TAU};

use proptest::collection::vec;
use proptest::prelude::*;
use realplane::linalg::Mat2;
use realplane::quantization::{
    fourier_coefficients, identity_residual, povm_element, povm_probability, quantize,
    quantize_with_samples, superposition_density, BorelSet, CircleFunction, FourierSeries,
    FourierTerm,
};
use realplane::states::rotation;
use realplane::{density_matrix, DensityParams};

fn series(max_degree: u32) -> impl Strategy<Value = FourierSeries> {
    (
        -2.0f64..2.0,
        vec((-1.0f64..1.0, -1.0f64..1.0), max_degree as usize),
    )
        .prop_map(|(a0, coeffs)| {
            let terms = coeffs
                .into_iter()
                .enumerate()
                .map(|(i, (ak, bk))| FourierTerm {
                    k: i as u32 + 1,
                    ak,
                    bk,
                })
                .collect();
            FourierSeries::new(a0, terms).unwrap()
        })
}

fn sampled(s: &FourierSeries) -> CircleFunction {
    let s = s.clone();
    CircleFunction::sampled(move |phi| s.eval(phi))
}

/// Brute-force `∫_a^b ρ_{r,φ+φ₀} dφ/π` with composite Simpson.
fn kernel_integral(a: f64, b: f64, r: f64, phi0: f64) -> Mat2 {
    let n = 2000;
    let h = (b - a) / n as f64;
    let mut acc = Mat2::ZERO;
    for j in 0..=n {
        let w = if j == 0 || j == n {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let phi = a + h * j as f64;
        acc += density_matrix(DensityParams::new(r, phi + phi0).unwrap()) * w;
    }
    acc * (h / (3.0 * PI))
}

proptest! {
    #[test]
    fn quantization_is_linear(
        f in series(6), g in series(6),
        alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
        r in 0.0f64..=1.0, phi0 in 0.0f64..TAU,
    ) {
        let combined = quantize(&f.combine(alpha, &g, beta).into(), r, phi0).unwrap();
        let expected = quantize(&f.clone().into(), r, phi0).unwrap() * alpha
            + quantize(&g.clone().into(), r, phi0).unwrap() * beta;
        prop_assert!(combined.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn quantization_is_rotation_covariant(
        f in series(5), r in 0.0f64..=1.0, phi0 in 0.0f64..TAU, theta in -4.0f64..4.0,
    ) {
        let rot = rotation(theta);
        let moved = quantize(&f.rotated(theta).into(), r, phi0).unwrap();
        let expected = rot * quantize(&f.clone().into(), r, phi0).unwrap() * rot.transpose();
        prop_assert!(moved.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn sampled_agrees_with_closed_form(
        f in series(8), r in 0.0f64..=1.0, phi0 in 0.0f64..TAU,
    ) {
        let exact = quantize(&f.clone().into(), r, phi0).unwrap();
        let numeric = quantize_with_samples(&sampled(&f), r, phi0, 64).unwrap();
        prop_assert!(exact.max_abs_diff(&numeric) < 1e-9);

        let d_exact = fourier_coefficients(&f.clone().into(), 64).unwrap();
        let d_num = fourier_coefficients(&sampled(&f), 64).unwrap();
        prop_assert!((d_exact.mean - d_num.mean).abs() < 1e-12);
        prop_assert!((d_exact.cc - d_num.cc).abs() < 1e-12);
        prop_assert!((d_exact.cs - d_num.cs).abs() < 1e-12);
    }

    #[test]
    fn quantized_functions_are_symmetric(f in series(4), r in 0.0f64..=1.0, phi0 in 0.0f64..TAU) {
        prop_assert!(quantize(&f.into(), r, phi0).unwrap().asymmetry() < 1e-15);
    }

    #[test]
    fn identity_is_resolved(r in 0.0f64..=1.0, phi0 in 0.0f64..TAU) {
        prop_assert!(identity_residual(r, phi0, 1024).unwrap() < 1e-12);
        prop_assert!(identity_residual(r, phi0, 8).unwrap() < 1e-12);
    }

    #[test]
    fn superposition_reproduces_state(s in 0.0f64..=1.0, theta in 0.0f64..PI, r in 0.05f64..=1.0) {
        let out = superposition_density(s, theta, r, 256).unwrap();
        let expected = density_matrix(DensityParams::new(s, theta).unwrap());
        prop_assert!(out.matrix.max_abs_diff(&expected) < 1e-10);
        prop_assert_eq!(out.convex, r >= 2.0 * s);
    }

    #[test]
    fn povm_is_additive_and_positive(
        cuts in vec(0.0f64..TAU, 3), r in 0.0f64..=1.0, phi0 in 0.0f64..TAU,
    ) {
        let mut c = cuts.clone();
        c.sort_by(f64::total_cmp);
        let a = BorelSet::interval(c[0], c[1]).unwrap();
        let b = BorelSet::interval(c[1], c[2]).unwrap();
        let joined = a.union(&b).unwrap();
        let fa = povm_element(&a, r, phi0).unwrap();
        let fb = povm_element(&b, r, phi0).unwrap();
        let fj = povm_element(&joined, r, phi0).unwrap();
        prop_assert!(fj.max_abs_diff(&(fa + fb)) < 1e-14);

        for f in [fa, fb, fj] {
            let ([_, lo], _) = f.symmetric_eigen();
            prop_assert!(lo >= -1e-14);
        }

        let rest = BorelSet::new([(0.0, c[0]), (c[2], TAU)]).unwrap();
        let total = fj + povm_element(&rest, r, phi0).unwrap();
        prop_assert!(total.max_abs_diff(&Mat2::IDENTITY) < 1e-14);
    }

    #[test]
    fn povm_matches_quadrature(
        a in 0.0f64..TAU, len in 0.0f64..TAU, r in 0.0f64..=1.0, phi0 in 0.0f64..TAU,
    ) {
        let b = (a + len).min(TAU);
        let exact = povm_element(&BorelSet::interval(a, b).unwrap(), r, phi0).unwrap();
        prop_assert!(exact.max_abs_diff(&kernel_integral(a, b, r, phi0)) < 1e-10);
    }

    #[test]
    fn povm_probability_is_a_probability(
        s in 0.0f64..=1.0, theta in 0.0f64..PI, a in 0.0f64..TAU, r in 0.0f64..=1.0,
    ) {
        let state = DensityParams::new(s, theta).unwrap();
        let delta = BorelSet::interval(a, TAU).unwrap();
        let p = povm_probability(state, &delta, r, 0.0).unwrap();
        prop_assert!((-1e-15..=1.0 + 1e-15).contains(&p));
        let q = povm_probability(state, &BorelSet::interval(0.0, a).unwrap(), r, 0.0).unwrap();
        prop_assert!((p + q - 1.0).abs() < 1e-14);
    }

    #[test]
    fn json_round_trip(f in series(5)) {
        prop_assert_eq!(FourierSeries::from_json(&f.to_json()).unwrap(), f);
    }
}

#[test]
fn malformed_json_is_a_parse_error() {
    for bad in ["", "{", "{\"terms\": []}", "[1,2]", "{\"a0\": \"x\"}"] {
        let err = FourierSeries::from_json(bad).unwrap_err();
        assert!(err.is_parse(), "{bad}: {err}");
    }
    // structurally valid but semantically wrong
    let dup = r#"{"a0": 0, "terms": [{"k": 2, "ak": 1, "bk": 0}, {"k": 2, "ak": 0, "bk": 1}]}"#;
    assert!(!FourierSeries::from_json(dup).unwrap_err().is_parse());
}

#[test]
fn indicator_of_half_turn_quantizes_to_half_identity() {
    // a discontinuous callable: converges slowly, but only to O(1/N)
    let f = CircleFunction::sampled(|phi| if phi < PI { 1.0 } else { 0.0 });
    let a = quantize_with_samples(&f, 1.0, 0.0, 1 << 14).unwrap();
    let exact = povm_element(&BorelSet::interval(0.0, PI).unwrap(), 1.0, 0.0).unwrap();
    assert!(a.max_abs_diff(&exact) < 1e-3);
}
