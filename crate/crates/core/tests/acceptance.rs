//! End-to-end acceptance criteria. Runs without the libtest harness so that
//! every criterion reports a line even when all of them pass.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realplane::bell::{
    baby_bell_check, diagonal_scan, linspace, sin_inequality, singlet_classical_correlation,
    state_correlation, BellKind, CosineSign, HalfAngleProjection, HiddenVariableModel,
};
use realplane::iso::{
    bell_basis_matrix, coherent_to_tensor, d_half_matrix, flip, quaternion_matrix, Quaternion,
    RealRep4,
};
use realplane::linalg::{Mat2, Mat4, TAU2};
use realplane::measurement::{
    closed_form_evolved_state, evolution_operator, evolve_joint, outcome_probability,
    outcome_probability_trace, sample_outcomes, Orientation,
};
use realplane::quantization::{
    basis_function, commutator_e1_e2, identity_residual, quantize, superposition_density,
};
use realplane::states::{projector, sigma_phi};
use realplane::{density_matrix, DensityParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn identity_resolution() -> Outcome {
    let (worst, elapsed) = timed(|| {
        let mut worst = 0.0f64;
        for r in linspace(0.0, 1.0, 5) {
            for phi0 in linspace(0.0, TAU, 5) {
                worst = worst.max(identity_residual(r, phi0, 1024).unwrap());
            }
        }
        worst
    });
    check(
        worst < 1e-12 && elapsed < Duration::from_secs(1),
        format!("max residual {worst:.2e} in {elapsed:.2?}"),
    )
}

const R_GRID: [f64; 4] = [0.0, 0.3, 0.6, 1.0];
const PHI0_GRID: [f64; 3] = [0.0, 0.7, 2.1];

fn basis_images() -> Outcome {
    let mut worst = 0.0f64;
    for r in R_GRID {
        for phi0 in PHI0_GRID {
            let a = |i| quantize(&basis_function(i).into(), r, phi0).unwrap();
            let expected = [
                Mat2::scalar(std::f64::consts::FRAC_1_SQRT_2),
                sigma_phi(2.0 * phi0) * (0.5 * r),
                sigma_phi(2.0 * phi0 + FRAC_PI_2) * (0.5 * r),
            ];
            for (i, e) in expected.iter().enumerate() {
                worst = worst.max(a(i).max_abs_diff(e));
            }
        }
    }
    check(worst < 1e-12, format!("max deviation {worst:.2e}"))
}

fn commutator() -> Outcome {
    let mut worst = 0.0f64;
    for r in R_GRID {
        for phi0 in PHI0_GRID {
            let c = commutator_e1_e2(r, phi0).unwrap();
            worst = worst.max(c.max_abs_diff(&(TAU2 * (-0.5 * r * r))));
        }
    }
    check(worst < 1e-12, format!("max deviation {worst:.2e}"))
}

fn superposition() -> Outcome {
    let mut worst = 0.0f64;
    let mut flags_ok = true;
    for (s, theta, r) in [(0.25, 0.0, 0.5), (0.1, 1.0, 0.9), (0.5, 2.0, 1.0)] {
        let out = superposition_density(s, theta, r, 1024).unwrap();
        let target = density_matrix(DensityParams::new(s, theta).unwrap());
        worst = worst.max(out.matrix.max_abs_diff(&target));
        flags_ok &= out.convex == (r >= 2.0 * s);
    }
    // non-convex weight must be reported as such
    flags_ok &= !superposition_density(0.5, 0.3, 0.6, 1024).unwrap().convex;
    check(
        worst < 1e-10 && flags_ok,
        format!(
            "max deviation {worst:.2e}, convexity flags {}",
            if flags_ok { "ok" } else { "wrong" }
        ),
    )
}

fn malus() -> Outcome {
    let pointer = DensityParams::new(0.8, 0.3).unwrap();
    let deltas = linspace(0.0, PI, 50);
    let mut worst = 0.0f64;
    let mut worst_z = 0.0f64;
    let n = 100_000u64;
    for r0 in [0.0, 0.5, 1.0] {
        let phi0 = 0.4;
        let light = DensityParams::new(r0, phi0).unwrap();
        for (k, &d) in deltas.iter().enumerate() {
            let phi = phi0 + d;
            let closed = outcome_probability(light, phi, Orientation::Parallel);
            let expected = 0.5 * (1.0 + light.r() * (2.0 * (phi - light.phi())).cos());
            let traced =
                outcome_probability_trace(pointer, light, 0.6, phi, Orientation::Parallel).unwrap();
            worst = worst
                .max((closed - traced).abs())
                .max((closed - expected).abs());

            if k % 7 == 0 {
                for seed in [1, 2, 3] {
                    let (hits, _) = sample_outcomes(closed, n, seed).unwrap();
                    let freq = hits as f64 / n as f64;
                    let sigma = (closed * (1.0 - closed) / n as f64).sqrt();
                    let z = if sigma > 0.0 {
                        (freq - closed).abs() / sigma
                    } else if freq == closed {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    worst_z = worst_z.max(z);
                }
            }
        }
    }
    check(
        worst < 1e-12 && worst_z <= 4.0,
        format!("closed vs trace {worst:.2e}, worst Monte-Carlo deviation {worst_z:.2} sigma"),
    )
}

fn evolution() -> Outcome {
    let mut worst_orth = 0.0f64;
    for g in linspace(0.0, 1.0, 4) {
        for r in linspace(0.0, 1.0, 4) {
            for phi in linspace(0.0, PI, 4) {
                worst_orth = worst_orth.max(
                    evolution_operator(g, r, phi)
                        .unwrap()
                        .orthogonality_defect(),
                );
            }
        }
    }
    let mut worst_obs = 0.0f64;
    for (s0, th0, r0, ph0) in [
        (0.0, 0.0, 1.0, 0.0),
        (0.7, 0.4, 0.5, 1.2),
        (1.0, 2.5, 0.9, 0.1),
    ] {
        let pointer = DensityParams::new(s0, th0).unwrap();
        let light = DensityParams::new(r0, ph0).unwrap();
        for r in linspace(0.0, 1.0, 4) {
            for phi in linspace(0.0, PI, 4) {
                let direct = evolve_joint(pointer, light, r, phi).unwrap();
                let closed = closed_form_evolved_state(pointer, light, r, phi);
                for e in [projector(phi), projector(phi + FRAC_PI_2)] {
                    let obs: Mat4 = Mat2::IDENTITY.kron(&e);
                    worst_obs = worst_obs.max(((direct - closed) * obs).trace().abs());
                }
            }
        }
    }
    check(
        worst_orth < 1e-12 && worst_obs < 1e-12,
        format!("orthogonality defect {worst_orth:.2e}, observable mismatch {worst_obs:.2e}"),
    )
}

fn quantum_correlation_grid() -> Outcome {
    let grid = linspace(0.0, TAU, 100);
    let (worst, elapsed) = timed(|| {
        let mut worst = 0.0f64;
        for &a in &grid {
            for &b in &grid {
                let p = state_correlation(BellKind::PsiMinus, a, b);
                worst = worst.max((p + (a - b).cos()).abs());
            }
        }
        worst
    });
    check(
        worst < 1e-12 && elapsed < Duration::from_secs(1),
        format!("max deviation {worst:.2e} in {elapsed:.2?}"),
    )
}

fn violation_region() -> Outcome {
    let etas = linspace(0.0, FRAC_PI_2, 361);
    let scan = diagonal_scan(&etas).unwrap();
    let step = PI / 720.0;
    let step_ok = etas
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() < 1e-14);
    let mismatches = scan
        .iter()
        .enumerate()
        .filter(|(i, p)| {
            // grid point i sits at i·π/720; (0, π/4) is 0 < i < 180
            let inside = *i > 0 && *i < 180;
            p.report.violated != inside
        })
        .count();
    let triple = sin_inequality(FRAC_PI_6, FRAC_PI_6);
    let triple_ok =
        (triple.lhs - 0.5).abs() < 1e-12 && (triple.rhs - 0.25).abs() < 1e-12 && triple.violated;
    let endpoint = &scan[180];
    check(
        step_ok && mismatches == 0 && triple_ok && (endpoint.eta - FRAC_PI_4).abs() < 1e-15,
        format!(
            "{} grid points, {mismatches} misclassified, (π/6,π/6): lhs {:.3} rhs {:.3}",
            scan.len(),
            triple.lhs,
            triple.rhs
        ),
    )
}

fn classical_bound() -> Outcome {
    let n = 4096;
    let slack = 10.0 / n as f64;
    let models: [&dyn HiddenVariableModel; 2] = [&CosineSign, &HalfAngleProjection];
    let mut worst_excess = f64::NEG_INFINITY;
    let mut failures = 0;
    for m in models {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let [a, b, c]: [f64; 3] = std::array::from_fn(|_| rng.random_range(0.0..TAU));
            let p = |x, y| singlet_classical_correlation(m, x, y, n).unwrap();
            let report = baby_bell_check(p(a, b), p(a, c), p(b, c)).unwrap();
            let excess = report.lhs - report.rhs;
            worst_excess = worst_excess.max(excess);
            if excess > slack {
                failures += 1;
            }
        }
    }
    check(
        failures == 0,
        format!("200 triples, {failures} beyond slack, max lhs−rhs {worst_excess:.2e}"),
    )
}

fn isomorphisms() -> Outcome {
    let bell = bell_basis_matrix().0.orthogonality_defect();
    let f = RealRep4::from_map(flip).0;
    let f2 = (f * f).max_abs_diff(&(-Mat4::identity()));

    let mut flip_col = 0.0f64;
    let mut coherent = 0.0f64;
    let mut fourth_zero = true;
    for i in 0..50 {
        for k in 0..50 {
            let theta = PI * i as f64 / 49.0;
            let phi = TAU * k as f64 / 50.0;
            let d = d_half_matrix(theta, phi).unwrap();
            flip_col = flip_col.max(d.column(1).max_abs_diff(&flip(&d.column(0))));
            let v = coherent_to_tensor(theta, phi).unwrap();
            fourth_zero &= v.0[3] == 0.0;
            coherent = coherent.max((v.norm() - 1.0).abs());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut quat = 0.0f64;
    let mut random_q = || {
        let [a, b, c, d]: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        Quaternion::new(a, b, c, d)
    };
    for _ in 0..1000 {
        let (p, q) = (random_q(), random_q());
        let det = quaternion_matrix(&p).det() - Complex64::new(p.norm_squared(), 0.0);
        let hom = quaternion_matrix(&(p * q))
            .max_abs_diff(&(quaternion_matrix(&p) * quaternion_matrix(&q)));
        quat = quat.max(det.norm()).max(hom);
    }

    check(
        bell < 1e-15 && f2 < 1e-15 && flip_col < 1e-12 && fourth_zero && coherent < 1e-12 && quat < 1e-12,
        format!(
            "bell {bell:.1e}, F²+1 {f2:.1e}, flip column {flip_col:.1e}, coherent norm {coherent:.1e}, quaternions {quat:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("resolution of identity", identity_resolution),
        ("quantized basis images", basis_images),
        ("commutator of basis images", commutator),
        ("convex superposition", superposition),
        ("Malus law", malus),
        ("evolution operator", evolution),
        ("singlet correlation", quantum_correlation_grid),
        ("violation region", violation_region),
        ("classical bound", classical_bound),
        ("isomorphism layer", isomorphisms),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
