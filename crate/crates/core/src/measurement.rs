//! The polarizer as a measuring device for linearly polarized light.
//!
//! The pointer (first tensor slot) and the light (second slot) couple through
//! `G(t) τ₂ ⊗ ρ^L_{r,φ}`. Because `exp(θ τ₂ ⊗ P) = R(θ) ⊗ P + 𝟙 ⊗ (𝟙 − P)` for
//! any orthogonal projector `P`, the evolution is
//!
//! ```text
//! U = R(G (1+r)/2) ⊗ E_φ + R(G (1−r)/2) ⊗ E_{φ+π/2}
//! ```
//!
//! and after the interaction the pointer has turned by `(1±r)/2` with the
//! Malus probabilities `(1 ± r₀ cos 2(φ−φ₀))/2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;

use crate::error::{check_range, Error, Result};
use crate::exec::Execution;
use crate::linalg::{Mat2, Mat4, TAU2};
use crate::states::{
    density_from_raw, density_matrix, projector, rotation, sigma_phi, DensityParams,
};

/// Tolerance for accepting a matrix as an orthogonal projector.
pub const PROJECTOR_TOLERANCE: f64 = 1e-10;

/// Draws per independently seeded Monte-Carlo block.
pub const SAMPLE_BLOCK: u64 = 8192;

/// `exp(θ τ₂ ⊗ P)`.
pub fn exp_projector(theta: f64, p: &Mat2) -> Result<Mat4> {
    let defect = p.asymmetry().max((*p * *p).max_abs_diff(p));
    if defect > PROJECTOR_TOLERANCE {
        return Err(Error::NotProjector(defect));
    }
    Ok(rotation(theta).kron(p) + Mat2::IDENTITY.kron(&(Mat2::IDENTITY - *p)))
}

/// Evolution operator at interaction strength `G ∈ [0, 1]` for a polarizer
/// `ρ^L_{r,φ}`. At `G = 1` the measurement is complete.
pub fn evolution_operator(g_value: f64, r: f64, phi: f64) -> Result<Mat4> {
    check_range("G", g_value, 0.0, 1.0)?;
    check_range("r", r, 0.0, 1.0)?;
    Ok(evolution_unchecked(g_value, r, phi))
}

fn evolution_unchecked(g: f64, r: f64, phi: f64) -> Mat4 {
    rotation(g * 0.5 * (1.0 + r)).kron(&projector(phi))
        + rotation(g * 0.5 * (1.0 - r)).kron(&projector(phi + FRAC_PI_2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileShape {
    /// Uniform coupling on `(t_M − η, t_M + η)`; `G` ramps linearly.
    Box,
    /// Normal coupling centred on `t_M` with standard deviation `η/3`.
    Gaussian,
}

/// Time profile of the coupling, a Dirac sequence of half-width `η` centred on
/// the measurement time `t_M`. Only its cumulative `G(t)` enters the dynamics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracProfile {
    t_m: f64,
    eta: f64,
    shape: ProfileShape,
}

impl DiracProfile {
    pub fn new(t_m: f64, eta: f64, shape: ProfileShape) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::OutOfRange {
                name: "eta",
                value: eta,
                min: f64::MIN_POSITIVE,
                max: f64::MAX,
            });
        }
        Ok(Self { t_m, eta, shape })
    }

    pub fn t_m(&self) -> f64 {
        self.t_m
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `G(t) = ∫_{-∞}^t g(t') dt'`, in `[0, 1]`.
    pub fn cumulative(&self, t: f64) -> f64 {
        match self.shape {
            ProfileShape::Box => ((t - self.t_m + self.eta) / (2.0 * self.eta)).clamp(0.0, 1.0),
            ProfileShape::Gaussian => {
                let sigma = self.eta / 3.0;
                let z = (t - self.t_m) / (sigma * std::f64::consts::SQRT_2);
                (0.5 * libm::erfc(-z)).clamp(0.0, 1.0)
            }
        }
    }

    /// `U(t, t₀)` for `t₀` before the interaction window.
    pub fn evolution_at(&self, t: f64, r: f64, phi: f64) -> Result<Mat4> {
        evolution_operator(self.cumulative(t), r, phi)
    }
}

/// `dirac_cumulative(profile, t) = G(t)`.
pub fn dirac_cumulative(profile: &DiracProfile, t: f64) -> f64 {
    profile.cumulative(t)
}

/// Post-measurement joint state `U (ρ^M ⊗ ρ^L) Uᵀ` with `G = 1`, where the
/// polarizer has mixing `interaction_r` and orientation `interaction_phi`.
pub fn evolve_joint(
    pointer: DensityParams,
    light: DensityParams,
    interaction_r: f64,
    interaction_phi: f64,
) -> Result<Mat4> {
    let u = evolution_operator(1.0, interaction_r, interaction_phi)?;
    let initial = density_matrix(pointer).kron(&density_matrix(light));
    Ok(u * initial * u.transpose())
}

/// The four-term closed form of the post-measurement state:
///
/// ```text
///   ρ^M_{s₀,θ₀+(1+r)/2} ⊗ (1 + r₀ cos 2Δ)/2 E_φ
/// + ρ^M_{s₀,θ₀+(1−r)/2} ⊗ (1 − r₀ cos 2Δ)/2 E_{φ+π/2}
/// + ¼ (R(r)  + s₀ σ_{2θ₀+1}) ⊗ r₀ sin 2Δ E_φ τ₂
/// − ¼ (R(−r) + s₀ σ_{2θ₀+1}) ⊗ r₀ sin 2Δ τ₂ E_φ
/// ```
///
/// with `Δ = φ − φ₀`. Kept as an independent route to check
/// [`evolve_joint`] against.
pub fn closed_form_evolved_state(
    pointer: DensityParams,
    light: DensityParams,
    interaction_r: f64,
    interaction_phi: f64,
) -> Mat4 {
    let (s0, theta0) = (pointer.r(), pointer.phi());
    let (r0, phi0) = (light.r(), light.phi());
    let r = interaction_r;
    let e = projector(interaction_phi);
    let e_perp = projector(interaction_phi + FRAC_PI_2);
    let delta = 2.0 * (interaction_phi - phi0);
    let c = r0 * delta.cos();
    let s = r0 * delta.sin();
    let mixed = sigma_phi(2.0 * theta0 + 1.0) * s0;

    density_from_raw(s0, theta0 + 0.5 * (1.0 + r)).kron(&(e * (0.5 * (1.0 + c))))
        + density_from_raw(s0, theta0 + 0.5 * (1.0 - r)).kron(&(e_perp * (0.5 * (1.0 - c))))
        + ((rotation(r) + mixed) * 0.25).kron(&(e * TAU2 * s))
        - ((rotation(-r) + mixed) * 0.25).kron(&(TAU2 * e * s))
}

/// Which projection of the light the pointer records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Light projected on `E_φ`; pointer turns by `(1+r)/2`.
    Parallel,
    /// Light projected on `E_{φ+π/2}`; pointer turns by `(1−r)/2`.
    Perpendicular,
}

impl Orientation {
    pub fn projector(self, phi: f64) -> Mat2 {
        match self {
            Orientation::Parallel => projector(phi),
            Orientation::Perpendicular => projector(phi + FRAC_PI_2),
        }
    }
}

/// One measurement outcome with its pointer readout and probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub orientation: Orientation,
    pub pointer_rotation: f64,
    pub probability: f64,
}

/// Malus law: `(1 ± r₀ cos 2(φ − φ₀))/2`.
pub fn outcome_probability(
    light: DensityParams,
    interaction_phi: f64,
    orientation: Orientation,
) -> f64 {
    let c = light.r() * (2.0 * (interaction_phi - light.phi())).cos();
    match orientation {
        Orientation::Parallel => 0.5 * (1.0 + c),
        Orientation::Perpendicular => 0.5 * (1.0 - c),
    }
}

/// `Tr[(U ρ Uᵀ)(𝟙 ⊗ E)]` through the full joint evolution.
pub fn outcome_probability_trace(
    pointer: DensityParams,
    light: DensityParams,
    interaction_r: f64,
    interaction_phi: f64,
    orientation: Orientation,
) -> Result<f64> {
    let joint = evolve_joint(pointer, light, interaction_r, interaction_phi)?;
    let observable = Mat2::IDENTITY.kron(&orientation.projector(interaction_phi));
    Ok((joint * observable).trace())
}

/// Both outcomes of measuring `light` with the polarizer `(r, φ)`.
pub fn measurement_outcomes(
    light: DensityParams,
    interaction_r: f64,
    interaction_phi: f64,
) -> [MeasurementOutcome; 2] {
    [Orientation::Parallel, Orientation::Perpendicular].map(|o| MeasurementOutcome {
        orientation: o,
        pointer_rotation: match o {
            Orientation::Parallel => 0.5 * (1.0 + interaction_r),
            Orientation::Perpendicular => 0.5 * (1.0 - interaction_r),
        },
        probability: outcome_probability(light, interaction_phi, o),
    })
}

/// Seed for the `task`-th of several concurrent samplers sharing a base seed.
pub fn split_seed(seed: u64, task: u64) -> u64 {
    seed ^ task
}

/// `n` Bernoulli(`p_parallel`) draws; returns `(parallel, perpendicular)` counts.
///
/// The draws are split into blocks of [`SAMPLE_BLOCK`]; block `b` uses a
/// ChaCha8 generator seeded with `seed` on stream `b`. The counts depend only
/// on `(p, n, seed)`, never on the execution strategy.
pub fn sample_outcomes(p_parallel: f64, n: u64, seed: u64) -> Result<(u64, u64)> {
    sample_outcomes_with(p_parallel, n, seed, Execution::default())
}

pub fn sample_outcomes_with(
    p_parallel: f64,
    n: u64,
    seed: u64,
    exec: Execution,
) -> Result<(u64, u64)> {
    check_range("p", p_parallel, 0.0, 1.0)?;
    let blocks = n.div_ceil(SAMPLE_BLOCK);
    let hits = exec.map(blocks as usize, |b| {
        let b = b as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let len = SAMPLE_BLOCK.min(n - b * SAMPLE_BLOCK);
        (0..len)
            .filter(|_| rng.random::<f64>() < p_parallel)
            .count() as u64
    });
    let parallel: u64 = hits.into_iter().sum();
    Ok((parallel, n - parallel))
}
