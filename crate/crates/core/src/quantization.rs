//! Covariant integral quantization of functions on the circle.
//!
//! The kernel is the density family `ρ_{r,φ+φ₀}` integrated against the
//! measure `dφ/π` on `[0, 2π)`. Since `∫ ρ_{r,φ+φ₀} dφ/π = 𝟙`, a function `f`
//! is sent to
//!
//! ```text
//! A_f = ⟨f⟩ 𝟙 + (r/2) [ C_c(R_φ₀ f) σ₃ + C_s(R_φ₀ f) σ₁ ]
//! ```
//!
//! where `⟨f⟩` is the circle average, `C_c`, `C_s` are the doubled-angle
//! cosine and sine coefficients and `(R_φ₀ f)(φ) = f(φ − φ₀)`.
//!
//! Finite Fourier series are handled in closed form. Arbitrary callables are
//! integrated with the uniform `N`-point rule on the periodic domain, which is
//! exact for trigonometric polynomials of degree below `N − 2` once multiplied
//! by the degree-2 kernel.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::exec::Execution;
use crate::linalg::{Mat2, SIGMA1, SIGMA3};
use crate::states::{density_from_raw, density_matrix, DensityParams};

/// Default number of quadrature nodes on the circle.
pub const DEFAULT_SAMPLES: usize = 1024;

/// Smallest accepted quadrature resolution.
pub const MIN_SAMPLES: usize = 8;

/// One harmonic `a_k cos kφ + b_k sin kφ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierTerm {
    pub k: u32,
    pub ak: f64,
    pub bk: f64,
}

/// `f(φ) = a0 + Σ (a_k cos kφ + b_k sin kφ)` with distinct positive `k`.
///
/// The JSON form is `{"a0": number, "terms": [{"k": int, "ak": number, "bk": number}]}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierSeries {
    a0: f64,
    terms: Vec<FourierTerm>,
}

#[derive(Deserialize)]
struct RawSeries {
    a0: f64,
    #[serde(default)]
    terms: Vec<FourierTerm>,
}

impl FourierSeries {
    pub fn new(a0: f64, terms: Vec<FourierTerm>) -> Result<Self> {
        let mut seen: Vec<u32> = Vec::with_capacity(terms.len());
        for t in &terms {
            if t.k == 0 {
                return Err(Error::ZeroHarmonic);
            }
            if seen.contains(&t.k) {
                return Err(Error::DuplicateHarmonic(t.k));
            }
            seen.push(t.k);
        }
        Ok(Self { a0, terms })
    }

    pub fn constant(a0: f64) -> Self {
        Self { a0, terms: vec![] }
    }

    /// `cos kφ`.
    pub fn cos(k: u32) -> Self {
        Self::harmonic(k, 1.0, 0.0)
    }

    /// `sin kφ`.
    pub fn sin(k: u32) -> Self {
        Self::harmonic(k, 0.0, 1.0)
    }

    fn harmonic(k: u32, ak: f64, bk: f64) -> Self {
        assert!(k > 0, "harmonic index must be positive");
        Self {
            a0: 0.0,
            terms: vec![FourierTerm { k, ak, bk }],
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawSeries = serde_json::from_str(s)?;
        Self::new(raw.a0, raw.terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series always serializes")
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn terms(&self) -> &[FourierTerm] {
        &self.terms
    }

    /// Largest harmonic index present (0 for a constant).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.k).max().unwrap_or(0)
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.terms.iter().fold(self.a0, |acc, t| {
            let (s, c) = (t.k as f64 * phi).sin_cos();
            acc + t.ak * c + t.bk * s
        })
    }

    /// `(R_θ f)(φ) = f(φ − θ)`, computed on the coefficients.
    pub fn rotated(&self, theta: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let (s, c) = (t.k as f64 * theta).sin_cos();
                FourierTerm {
                    k: t.k,
                    ak: t.ak * c - t.bk * s,
                    bk: t.ak * s + t.bk * c,
                }
            })
            .collect();
        Self { a0: self.a0, terms }
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: f64, other: &FourierSeries, beta: f64) -> Self {
        let mut terms: Vec<FourierTerm> = self
            .terms
            .iter()
            .map(|t| FourierTerm {
                k: t.k,
                ak: alpha * t.ak,
                bk: alpha * t.bk,
            })
            .collect();
        for t in &other.terms {
            match terms.iter_mut().find(|u| u.k == t.k) {
                Some(u) => {
                    u.ak += beta * t.ak;
                    u.bk += beta * t.bk;
                }
                None => terms.push(FourierTerm {
                    k: t.k,
                    ak: beta * t.ak,
                    bk: beta * t.bk,
                }),
            }
        }
        Self {
            a0: alpha * self.a0 + beta * other.a0,
            terms,
        }
    }

    fn coefficient(&self, k: u32) -> (f64, f64) {
        self.terms
            .iter()
            .find(|t| t.k == k)
            .map_or((0.0, 0.0), |t| (t.ak, t.bk))
    }
}

type Rule = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function on the circle, the input of the quantization map.
#[derive(Clone)]
pub enum CircleFunction {
    Fourier(FourierSeries),
    /// A callable evaluated on `[0, 2π)`.
    Sampled(Rule),
}

impl CircleFunction {
    pub fn sampled(rule: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        CircleFunction::Sampled(Arc::new(rule))
    }

    pub fn eval(&self, phi: f64) -> f64 {
        match self {
            CircleFunction::Fourier(s) => s.eval(phi),
            CircleFunction::Sampled(rule) => rule(wrap(phi)),
        }
    }

    /// `(R_θ f)(φ) = f(φ − θ)`.
    pub fn rotated(&self, theta: f64) -> Self {
        match self {
            CircleFunction::Fourier(s) => CircleFunction::Fourier(s.rotated(theta)),
            CircleFunction::Sampled(rule) => {
                let rule = Arc::clone(rule);
                CircleFunction::sampled(move |phi| rule(wrap(phi - theta)))
            }
        }
    }
}

impl From<FourierSeries> for CircleFunction {
    fn from(s: FourierSeries) -> Self {
        CircleFunction::Fourier(s)
    }
}

impl fmt::Debug for CircleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleFunction::Fourier(s) => f.debug_tuple("Fourier").field(s).finish(),
            CircleFunction::Sampled(_) => f.write_str("Sampled(..)"),
        }
    }
}

fn wrap(phi: f64) -> f64 {
    let y = phi.rem_euclid(TAU);
    if y >= TAU {
        0.0
    } else {
        y
    }
}

/// Circle average and doubled-angle Fourier coefficients of a function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourierData {
    /// `⟨f⟩ = (1/2π) ∫ f dφ`.
    pub mean: f64,
    /// `C_c(f) = ∫ f cos 2φ dφ/π`.
    pub cc: f64,
    /// `C_s(f) = ∫ f sin 2φ dφ/π`.
    pub cs: f64,
}

impl FourierData {
    /// The projection onto `span{1, cos 2φ, sin 2φ}`, evaluated at `φ`.
    pub fn reconstruct(&self, phi: f64) -> f64 {
        let (s, c) = (2.0 * phi).sin_cos();
        self.mean + self.cc * c + self.cs * s
    }
}

#[derive(Clone, Copy, Default)]
struct Moments([f64; 3]);

impl Add for Moments {
    type Output = Moments;
    fn add(self, rhs: Moments) -> Moments {
        Moments([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }
}

impl Zero for Moments {
    fn zero() -> Self {
        Moments::default()
    }
    fn is_zero(&self) -> bool {
        self.0 == [0.0; 3]
    }
}

pub(crate) fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: n,
        })
    } else {
        Ok(())
    }
}

/// Node `j` of the uniform `n`-point rule on `[0, 2π)`.
fn node(j: usize, n: usize) -> f64 {
    TAU * j as f64 / n as f64
}

/// `⟨f⟩`, `C_c(f)`, `C_s(f)`. Fourier series are evaluated exactly and ignore
/// `n_samples`; callables use the `n_samples`-point periodic rule.
pub fn fourier_coefficients(f: &CircleFunction, n_samples: usize) -> Result<FourierData> {
    fourier_coefficients_with(f, n_samples, Execution::default())
}

pub fn fourier_coefficients_with(
    f: &CircleFunction,
    n_samples: usize,
    exec: Execution,
) -> Result<FourierData> {
    match f {
        CircleFunction::Fourier(s) => {
            let (cc, cs) = s.coefficient(2);
            Ok(FourierData { mean: s.a0, cc, cs })
        }
        CircleFunction::Sampled(rule) => {
            check_samples(n_samples)?;
            let Moments([m, c, s]) = exec.sum(n_samples, |j| {
                let phi = node(j, n_samples);
                let v = rule(phi);
                let (s2, c2) = (2.0 * phi).sin_cos();
                Moments([v, v * c2, v * s2])
            });
            let n = n_samples as f64;
            Ok(FourierData {
                mean: m / n,
                cc: 2.0 * c / n,
                cs: 2.0 * s / n,
            })
        }
    }
}

/// `A_f` for the kernel `ρ_{r,φ+φ₀}`, with [`DEFAULT_SAMPLES`] nodes for callables.
pub fn quantize(f: &CircleFunction, r: f64, phi0: f64) -> Result<Mat2> {
    quantize_with_samples(f, r, phi0, DEFAULT_SAMPLES)
}

pub fn quantize_with_samples(
    f: &CircleFunction,
    r: f64,
    phi0: f64,
    n_samples: usize,
) -> Result<Mat2> {
    check_range("r", r, 0.0, 1.0)?;
    let rotated = fourier_coefficients(&f.rotated(phi0), n_samples)?;
    let mean = match f {
        // the average is rotation invariant; use the unrotated one for exactness
        CircleFunction::Fourier(s) => s.a0,
        CircleFunction::Sampled(_) => rotated.mean,
    };
    Ok(Mat2::scalar(mean) + (SIGMA3 * rotated.cc + SIGMA1 * rotated.cs) * (0.5 * r))
}

/// `max |∫ ρ_{r,φ+φ₀} dφ/π − 𝟙|` under the `n_samples`-point rule.
pub fn identity_residual(r: f64, phi0: f64, n_samples: usize) -> Result<f64> {
    check_range("r", r, 0.0, 1.0)?;
    check_samples(n_samples)?;
    let w = 2.0 / n_samples as f64;
    let total: Mat2 = Execution::default().sum(n_samples, |j| {
        density_from_raw(r, node(j, n_samples) + phi0) * w
    });
    Ok(total.max_abs_diff(&Mat2::IDENTITY))
}

/// The basis functions `e₀ = 1/√2`, `e₁ = cos 2φ`, `e₂ = sin 2φ` of the
/// three-dimensional subspace whose images form a noncommutative ℝ³.
pub fn basis_function(index: usize) -> FourierSeries {
    match index {
        0 => FourierSeries::constant(std::f64::consts::FRAC_1_SQRT_2),
        1 => FourierSeries::cos(2),
        2 => FourierSeries::sin(2),
        _ => panic!("basis index {index} out of range 0..3"),
    }
}

/// `[A_{e₁}, A_{e₂}]`, which equals `−(r²/2) τ₂` for every `φ₀`.
pub fn commutator_e1_e2(r: f64, phi0: f64) -> Result<Mat2> {
    let a1 = quantize(&basis_function(1).into(), r, phi0)?;
    let a2 = quantize(&basis_function(2).into(), r, phi0)?;
    Ok(a1.commutator(&a2))
}

/// Output of [`superposition_density`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Superposition {
    pub matrix: Mat2,
    /// Whether the weight `½ + (s/r) cos 2φ` is nonnegative, i.e. `r ≥ 2s`.
    pub convex: bool,
}

/// `∫ [½ + (s/r) cos 2φ] ρ_{r,φ+θ} dφ/π` by quadrature; reproduces `ρ_{s,θ}`.
pub fn superposition_density(
    s: f64,
    theta: f64,
    r: f64,
    n_samples: usize,
) -> Result<Superposition> {
    check_range("s", s, 0.0, 1.0)?;
    check_range("r", r, 0.0, 1.0)?;
    if r == 0.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            min: f64::MIN_POSITIVE,
            max: 1.0,
        });
    }
    check_samples(n_samples)?;
    let ratio = s / r;
    let w = 2.0 / n_samples as f64;
    let matrix: Mat2 = Execution::default().sum(n_samples, |j| {
        let phi = node(j, n_samples);
        let weight = 0.5 + ratio * (2.0 * phi).cos();
        density_from_raw(r, phi + theta) * (weight * w)
    });
    Ok(Superposition {
        matrix,
        convex: 2.0 * s <= r,
    })
}

/// A finite union of disjoint half-open intervals of `[0, 2π)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BorelSet {
    intervals: Vec<(f64, f64)>,
}

impl BorelSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self {
            intervals: vec![(0.0, TAU)],
        }
    }

    /// Validates bounds and disjointness; intervals are stored sorted.
    /// Empty intervals (`start == end`) are dropped.
    pub fn new(intervals: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut v: Vec<(f64, f64)> = Vec::new();
        for (a, b) in intervals {
            if !(0.0 <= a && a <= b && b <= TAU) {
                return Err(Error::InvalidInterval { start: a, end: b });
            }
            if a < b {
                v.push((a, b));
            }
        }
        v.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in v.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::OverlappingIntervals(w[0].0, w[0].1, w[1].0, w[1].1));
            }
        }
        Ok(Self { intervals: v })
    }

    pub fn interval(start: f64, end: f64) -> Result<Self> {
        Self::new([(start, end)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Union of two disjoint sets.
    pub fn union(&self, other: &BorelSet) -> Result<Self> {
        Self::new(self.intervals.iter().chain(other.intervals.iter()).copied())
    }

    /// Lebesgue measure (total length).
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, phi: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= phi && phi < b)
    }
}

/// `F(Δ) = ∫_Δ ρ_{r,φ+φ₀} dφ/π`, evaluated from exact antiderivatives on
/// each interval.
pub fn povm_element(delta: &BorelSet, r: f64, phi0: f64) -> Result<Mat2> {
    check_range("r", r, 0.0, 1.0)?;
    let mut length = 0.0;
    let mut cos_part = 0.0;
    let mut sin_part = 0.0;
    for &(a, b) in delta.intervals() {
        length += b - a;
        let (sa, ca) = (2.0 * (a + phi0)).sin_cos();
        let (sb, cb) = (2.0 * (b + phi0)).sin_cos();
        // ∫ cos 2(φ+φ₀) dφ/π = [sin 2(φ+φ₀)] / 2π, sine likewise
        cos_part += sb - sa;
        sin_part += ca - cb;
    }
    let scale = 0.5 * r / TAU;
    Ok(Mat2::scalar(length / TAU) + (SIGMA3 * cos_part + SIGMA1 * sin_part) * scale)
}

/// `Tr[ρ F(Δ)]`: the probability the state assigns to `Δ`.
pub fn povm_probability(state: DensityParams, delta: &BorelSet, r: f64, phi0: f64) -> Result<f64> {
    let f = povm_element(delta, r, phi0)?;
    Ok((density_matrix(state) * f).trace())
}
