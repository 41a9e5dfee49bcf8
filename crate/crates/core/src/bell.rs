//! Bell states of two real qubits, `σ_φ` correlations, local hidden-variable
//! models and the three-angle ("baby") Bell inequality.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{norm4, Mat4};
use crate::states::{sigma_eigenvector, sigma_phi};

/// Slack used for strict inequality tests; boundary points are not violations.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Default number of λ nodes for classical correlations.
pub const DEFAULT_NODES: usize = 4096;

/// Tolerance on the normalization of a hidden-variable density.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A vector of `ℝ²_A ⊗ ℝ²_B` in the ordered basis
/// `|0⟩|0⟩, |π/2⟩|π/2⟩, |0⟩|π/2⟩, |π/2⟩|0⟩`.
///
/// Note this is not the lexicographic order used by [`Mat4`]; convert with
/// [`TensorVec4::to_lex`] / [`TensorVec4::from_lex`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorVec4(pub [f64; 4]);

/// Position of each basis vector of [`TensorVec4`] in lexicographic order.
const LEX_INDEX: [usize; 4] = [0, 3, 1, 2];

impl TensorVec4 {
    pub fn to_lex(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (k, &i) in LEX_INDEX.iter().enumerate() {
            out[i] = self.0[k];
        }
        out
    }

    pub fn from_lex(v: &[f64; 4]) -> Self {
        TensorVec4(LEX_INDEX.map(|i| v[i]))
    }

    pub fn norm(&self) -> f64 {
        norm4(&self.0)
    }

    pub fn dot(&self, other: &TensorVec4) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "Phi+",
            BellKind::PhiMinus => "Phi-",
            BellKind::PsiPlus => "Psi+",
            BellKind::PsiMinus => "Psi-",
        }
    }
}

/// `Φ± = (|00⟩ ± |11⟩)/√2`, `Ψ± = (±|01⟩ + |10⟩)/√2` with `1 ≡ |π/2⟩`.
pub fn bell_state(kind: BellKind) -> TensorVec4 {
    let h = FRAC_1_SQRT_2;
    TensorVec4(match kind {
        BellKind::PhiPlus => [h, h, 0.0, 0.0],
        BellKind::PhiMinus => [h, -h, 0.0, 0.0],
        BellKind::PsiPlus => [0.0, 0.0, h, h],
        BellKind::PsiMinus => [0.0, 0.0, -h, h],
    })
}

/// `σ_{φa} ⊗ σ_{φb}` in the lexicographic convention of [`Mat4`].
pub fn sigma_tensor(phi_a: f64, phi_b: f64) -> Mat4 {
    sigma_phi(phi_a).kron(&sigma_phi(phi_b))
}

/// `⟨ψ| σ_{φa} ⊗ σ_{φb} |ψ⟩`.
pub fn state_correlation(kind: BellKind, phi_a: f64, phi_b: f64) -> f64 {
    let psi = bell_state(kind).to_lex();
    sigma_tensor(phi_a, phi_b).bilinear(&psi, &psi)
}

/// Singlet correlation `⟨Ψ⁻| σ_{φa} ⊗ σ_{φb} |Ψ⁻⟩ = −cos(φa − φb)`, computed
/// by contraction.
pub fn quantum_correlation(phi_a: f64, phi_b: f64) -> f64 {
    state_correlation(BellKind::PsiMinus, phi_a, phi_b)
}

/// Singlet correlations on the grid `phi_a × phi_b`, row-major.
pub fn quantum_correlation_grid(phi_a: &[f64], phi_b: &[f64], exec: Execution) -> Vec<f64> {
    let nb = phi_b.len();
    exec.map(phi_a.len() * nb, |k| {
        quantum_correlation(phi_a[k / nb], phi_b[k % nb])
    })
}

/// Outcome probabilities `p(εa, εb)` of measuring `σ_{φa}`, `σ_{φb}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointTable {
    /// `[p(+,+), p(+,−), p(−,+), p(−,−)]`.
    pub p: [f64; 4],
}

impl JointTable {
    pub fn get(&self, eps_a: i8, eps_b: i8) -> f64 {
        let ia = usize::from(eps_a < 0);
        let ib = usize::from(eps_b < 0);
        self.p[2 * ia + ib]
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// `Σ εa εb p(εa, εb)`.
    pub fn correlation(&self) -> f64 {
        self.p[0] - self.p[1] - self.p[2] + self.p[3]
    }

    /// `(p(εa = +1), p(εb = +1))`.
    pub fn marginals(&self) -> (f64, f64) {
        (self.p[0] + self.p[1], self.p[0] + self.p[2])
    }
}

pub fn joint_probabilities(kind: BellKind, phi_a: f64, phi_b: f64) -> JointTable {
    let psi = bell_state(kind).to_lex();
    let mut p = [0.0; 4];
    for (ia, pa) in [true, false].into_iter().enumerate() {
        for (ib, pb) in [true, false].into_iter().enumerate() {
            let e = sigma_eigenvector(phi_a, pa).kron(sigma_eigenvector(phi_b, pb));
            let amp: f64 = e.iter().zip(psi.iter()).map(|(x, y)| x * y).sum();
            p[2 * ia + ib] = amp * amp;
        }
    }
    JointTable { p }
}

/// A deterministic local model: outcome `ε(φ, λ) = ±1` for a hidden variable
/// `λ` distributed with `density` on `domain`.
pub trait HiddenVariableModel: Sync {
    fn outcome(&self, phi: f64, lambda: f64) -> bool;
    fn density(&self, lambda: f64) -> f64;
    fn domain(&self) -> (f64, f64);
    fn name(&self) -> &str {
        "custom"
    }

    fn epsilon(&self, phi: f64, lambda: f64) -> f64 {
        if self.outcome(phi, lambda) {
            1.0
        } else {
            -1.0
        }
    }
}

fn sign_positive(x: f64) -> bool {
    x >= 0.0
}

/// `ε(φ, λ) = sign cos(φ − λ)`, `λ` uniform on `[0, 2π)`: the sign of the
/// projection of `u_φ` on a hidden direction `u_λ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CosineSign;

impl HiddenVariableModel for CosineSign {
    fn outcome(&self, phi: f64, lambda: f64) -> bool {
        sign_positive((phi - lambda).cos())
    }
    fn density(&self, _lambda: f64) -> f64 {
        1.0 / TAU
    }
    fn domain(&self) -> (f64, f64) {
        (0.0, TAU)
    }
    fn name(&self) -> &str {
        "cosine-sign"
    }
}

/// Sign of the projection of the measured orientation `|φ/2⟩` on a hidden
/// orientation `λ ∈ [0, π)`. The angle is reduced to `[0, 2π)` first so the
/// model is a function on the circle.
#[derive(Clone, Copy, Debug, Default)]
pub struct HalfAngleProjection;

impl HiddenVariableModel for HalfAngleProjection {
    fn outcome(&self, phi: f64, lambda: f64) -> bool {
        let phi = phi.rem_euclid(TAU);
        sign_positive((0.5 * phi - lambda).cos())
    }
    fn density(&self, _lambda: f64) -> f64 {
        1.0 / PI
    }
    fn domain(&self) -> (f64, f64) {
        (0.0, PI)
    }
    fn name(&self) -> &str {
        "half-angle-projection"
    }
}

/// Midpoint rule on the model's domain.
fn nodes(model: &dyn HiddenVariableModel, n: usize) -> impl Fn(usize) -> (f64, f64) + '_ {
    let (a, b) = model.domain();
    let h = (b - a) / n as f64;
    move |j| {
        let lambda = a + (j as f64 + 0.5) * h;
        (lambda, model.density(lambda) * h)
    }
}

/// `∫ ρ(λ) dλ` under the `n_nodes` midpoint rule.
pub fn density_mass(model: &dyn HiddenVariableModel, n_nodes: usize) -> f64 {
    let node = nodes(model, n_nodes);
    Execution::Sequential.sum(n_nodes, |j| node(j).1)
}

/// Fails unless the model's density integrates to 1.
pub fn check_normalization(model: &dyn HiddenVariableModel, n_nodes: usize) -> Result<()> {
    let mass = density_mass(model, n_nodes);
    if (mass - 1.0).abs() > NORMALIZATION_TOLERANCE {
        Err(Error::NotNormalized(mass))
    } else {
        Ok(())
    }
}

/// `P(φa, φb) = ∫ ρ(λ) ε(φa, λ) ε(φb, λ) dλ` with an `n_nodes` midpoint rule.
/// The integrand is piecewise constant, so the error is `O(1/n_nodes)`.
pub fn classical_correlation(
    model: &dyn HiddenVariableModel,
    phi_a: f64,
    phi_b: f64,
    n_nodes: usize,
) -> Result<f64> {
    classical_correlation_with(model, phi_a, phi_b, n_nodes, Execution::default())
}

pub fn classical_correlation_with(
    model: &dyn HiddenVariableModel,
    phi_a: f64,
    phi_b: f64,
    n_nodes: usize,
    exec: Execution,
) -> Result<f64> {
    if n_nodes == 0 {
        return Err(Error::Empty("n_nodes"));
    }
    check_normalization(model, n_nodes)?;
    let node = nodes(model, n_nodes);
    Ok(exec.sum(n_nodes, |j| {
        let (lambda, w) = node(j);
        w * model.epsilon(phi_a, lambda) * model.epsilon(phi_b, lambda)
    }))
}

/// Monte-Carlo estimate of [`classical_correlation`]: `λ` drawn uniformly on
/// the domain and weighted by the density.
pub fn classical_correlation_mc(
    model: &dyn HiddenVariableModel,
    phi_a: f64,
    phi_b: f64,
    n_draws: usize,
    seed: u64,
) -> Result<f64> {
    if n_draws == 0 {
        return Err(Error::Empty("n_draws"));
    }
    check_normalization(model, DEFAULT_NODES)?;
    let (a, b) = model.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = 0.0;
    for _ in 0..n_draws {
        let lambda = rng.random_range(a..b);
        acc += model.density(lambda) * model.epsilon(phi_a, lambda) * model.epsilon(phi_b, lambda);
    }
    Ok(acc * (b - a) / n_draws as f64)
}

/// The hidden-variable prediction for the singlet, where perfect
/// anticorrelation at equal angles forces `ε^B = −ε^A`:
/// `P(φa, φb) = −∫ ρ ε(φa) ε(φb) dλ`.
pub fn singlet_classical_correlation(
    model: &dyn HiddenVariableModel,
    phi_a: f64,
    phi_b: f64,
    n_nodes: usize,
) -> Result<f64> {
    classical_correlation(model, phi_a, phi_b, n_nodes).map(|p| -p)
}

/// `lhs ≤ rhs` check with strict violation `lhs > rhs + 1e-12`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
    /// `rhs − lhs`, snapped to 0 within the boundary tolerance.
    pub margin: f64,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        let mut margin = rhs - lhs;
        if margin.abs() <= BOUNDARY_TOLERANCE {
            margin = 0.0;
        }
        Self {
            lhs,
            rhs,
            violated: lhs > rhs + BOUNDARY_TOLERANCE,
            margin,
        }
    }
}

/// `|P(a,b) − P(a,c)| ≤ 1 + P(b,c)`.
pub fn baby_bell_check(p_ab: f64, p_ac: f64, p_bc: f64) -> Result<InequalityReport> {
    for (name, v) in [("P_ab", p_ab), ("P_ac", p_ac), ("P_bc", p_bc)] {
        if v.is_nan() || v.abs() > 1.0 + BOUNDARY_TOLERANCE {
            return Err(Error::OutOfRange {
                name,
                value: v,
                min: -1.0,
                max: 1.0,
            });
        }
    }
    Ok(InequalityReport::new((p_ab - p_ac).abs(), 1.0 + p_bc))
}

/// `|sin²ζ − sin²(η+ζ)| ≤ sin²η`, with `ζ = (φa−φb)/2`, `η = (φb−φc)/2`.
pub fn sin_inequality(zeta: f64, eta: f64) -> InequalityReport {
    let s2 = |x: f64| x.sin().powi(2);
    InequalityReport::new((s2(zeta) - s2(eta + zeta)).abs(), s2(eta))
}

/// One row of a violation scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub zeta: f64,
    pub eta: f64,
    pub report: InequalityReport,
}

/// `steps` equally spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![start],
        _ => {
            let h = (end - start) / (steps - 1) as f64;
            (0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        end
                    } else {
                        start + h * i as f64
                    }
                })
                .collect()
        }
    }
}

/// [`sin_inequality`] on the Cartesian grid `zeta_grid × eta_grid`, ζ-major.
pub fn violation_scan(zeta_grid: &[f64], eta_grid: &[f64]) -> Result<Vec<ScanPoint>> {
    violation_scan_with(zeta_grid, eta_grid, Execution::default())
}

pub fn violation_scan_with(
    zeta_grid: &[f64],
    eta_grid: &[f64],
    exec: Execution,
) -> Result<Vec<ScanPoint>> {
    if zeta_grid.is_empty() {
        return Err(Error::Empty("zeta grid"));
    }
    if eta_grid.is_empty() {
        return Err(Error::Empty("eta grid"));
    }
    let ne = eta_grid.len();
    Ok(exec.map(zeta_grid.len() * ne, |k| {
        let (zeta, eta) = (zeta_grid[k / ne], eta_grid[k % ne]);
        ScanPoint {
            zeta,
            eta,
            report: sin_inequality(zeta, eta),
        }
    }))
}

/// [`sin_inequality`] along the diagonal `ζ = η`.
pub fn diagonal_scan(eta_grid: &[f64]) -> Result<Vec<ScanPoint>> {
    if eta_grid.is_empty() {
        return Err(Error::Empty("eta grid"));
    }
    Ok(eta_grid
        .iter()
        .map(|&eta| ScanPoint {
            zeta: eta,
            eta,
            report: sin_inequality(eta, eta),
        })
        .collect())
}

/// Aggregate view of a scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanSummary {
    pub points: usize,
    pub violated: usize,
    /// Smallest and largest `η` among violated diagonal (`ζ = η`) points.
    pub diagonal_interval: Option<(f64, f64)>,
}

impl ScanSummary {
    pub fn violated_fraction(&self) -> f64 {
        if self.points == 0 {
            0.0
        } else {
            self.violated as f64 / self.points as f64
        }
    }
}

pub fn summarize(points: &[ScanPoint]) -> ScanSummary {
    let violated = points.iter().filter(|p| p.report.violated).count();
    let diagonal_interval = points
        .iter()
        .filter(|p| p.report.violated && p.zeta == p.eta)
        .fold(None, |acc: Option<(f64, f64)>, p| match acc {
            None => Some((p.eta, p.eta)),
            Some((lo, hi)) => Some((lo.min(p.eta), hi.max(p.eta))),
        });
    ScanSummary {
        points: points.len(),
        violated,
        diagonal_interval,
    }
}

/// CSV header for scan output.
pub const SCAN_CSV_HEADER: &str = "zeta,eta,lhs,rhs,violated,margin";

/// Writes `zeta,eta,lhs,rhs,violated,margin` rows. `angle_scale` multiplies
/// the two angle columns (1 for radians).
pub fn write_scan_csv<W: Write>(
    mut out: W,
    points: &[ScanPoint],
    angle_scale: f64,
) -> io::Result<()> {
    writeln!(out, "{SCAN_CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            p.zeta * angle_scale,
            p.eta * angle_scale,
            p.report.lhs,
            p.report.rhs,
            p.report.violated,
            p.report.margin
        )?;
    }
    Ok(())
}
