//! The chain `ℝ²⊗ℝ² ≅ ℝ⁴ ≅ ℂ² ≅ ℍ`.
//!
//! `ℂ²` is given the real structure `{e₁, e₂, ie₁, ie₂}`, so a vector has
//! real coordinates `(x₁, x₂, y₁, y₂)` and every real-linear map, including
//! the antilinear conjugation `𝖢` and flip `𝖥 = 𝖢τ₂`, is an ordinary 4x4
//! real matrix ([`RealRep4`]). Complex-linear maps commute with the matrix
//! `J` of multiplication by `i`; antilinear ones anticommute with it.
//!
//! The tensor basis is identified with the real structure by
//!
//! ```text
//! |0⟩|0⟩ = e₁,  |π/2⟩|π/2⟩ = −e₂,  |0⟩|π/2⟩ = ie₁,  |π/2⟩|0⟩ = ie₂
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::ops::Mul;

use num_complex::Complex64;

use crate::bell::TensorVec4;
use crate::error::{check_range, Result};
use crate::linalg::{norm4, Mat4};

/// `(z₁, z₂) ∈ ℂ²` stored as four reals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPair {
    pub x1: f64,
    pub y1: f64,
    pub x2: f64,
    pub y2: f64,
}

/// `|↑⟩ = e₁`.
pub const UP: ComplexPair = ComplexPair::new(1.0, 0.0, 0.0, 0.0);
/// `|↓⟩ = e₂`.
pub const DOWN: ComplexPair = ComplexPair::new(0.0, 0.0, 1.0, 0.0);

impl ComplexPair {
    pub const fn new(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self { x1, y1, x2, y2 }
    }

    pub fn from_complex(z1: Complex64, z2: Complex64) -> Self {
        Self::new(z1.re, z1.im, z2.re, z2.im)
    }

    pub fn z1(&self) -> Complex64 {
        Complex64::new(self.x1, self.y1)
    }

    pub fn z2(&self) -> Complex64 {
        Complex64::new(self.x2, self.y2)
    }

    /// Coordinates `(x₁, x₂, y₁, y₂)` in the basis `{e₁, e₂, ie₁, ie₂}`.
    pub fn to_real_structure(&self) -> [f64; 4] {
        [self.x1, self.x2, self.y1, self.y2]
    }

    pub fn from_real_structure(v: &[f64; 4]) -> Self {
        Self::new(v[0], v[2], v[1], v[3])
    }

    pub fn norm(&self) -> f64 {
        norm4(&self.to_real_structure())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(k * self.x1, k * self.y1, k * self.x2, k * self.y2)
    }

    pub fn add(&self, o: &ComplexPair) -> Self {
        Self::new(
            self.x1 + o.x1,
            self.y1 + o.y1,
            self.x2 + o.x2,
            self.y2 + o.y2,
        )
    }

    /// Multiplication by a complex scalar.
    pub fn times(&self, c: Complex64) -> Self {
        Self::from_complex(c * self.z1(), c * self.z2())
    }

    pub fn max_abs_diff(&self, o: &ComplexPair) -> f64 {
        let a = self.to_real_structure();
        let b = o.to_real_structure();
        a.iter()
            .zip(b.iter())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
    }
}

/// A real-linear operator on `ℂ²` in the basis `{e₁, e₂, ie₁, ie₂}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealRep4(pub Mat4);

impl RealRep4 {
    /// Matrix of a real-linear map, read off from its action on the basis.
    pub fn from_map(f: impl Fn(&ComplexPair) -> ComplexPair) -> Self {
        RealRep4(Mat4::from_columns(|j| {
            let mut e = [0.0; 4];
            e[j] = 1.0;
            f(&ComplexPair::from_real_structure(&e)).to_real_structure()
        }))
    }

    /// Multiplication by `i`.
    pub fn j() -> Self {
        Self::from_map(|z| z.times(Complex64::i()))
    }

    pub fn apply(&self, z: &ComplexPair) -> ComplexPair {
        ComplexPair::from_real_structure(&self.0.apply(&z.to_real_structure()))
    }

    /// `max |M J − J M|`.
    pub fn complex_linearity_defect(&self) -> f64 {
        let j = Self::j().0;
        (self.0 * j).max_abs_diff(&(j * self.0))
    }

    /// `max |M J + J M|`.
    pub fn antilinearity_defect(&self) -> f64 {
        let j = Self::j().0;
        (self.0 * j + j * self.0).max_abs()
    }
}

/// A 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat2(pub [[Complex64; 2]; 2]);

impl CMat2 {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        CMat2([[o, z], [z, o]])
    }

    pub fn from_columns(c0: &ComplexPair, c1: &ComplexPair) -> Self {
        CMat2([[c0.z1(), c1.z1()], [c0.z2(), c1.z2()]])
    }

    pub fn column(&self, j: usize) -> ComplexPair {
        ComplexPair::from_complex(self.0[0][j], self.0[1][j])
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        CMat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, z: &ComplexPair) -> ComplexPair {
        let m = &self.0;
        ComplexPair::from_complex(
            m[0][0] * z.z1() + m[0][1] * z.z2(),
            m[1][0] * z.z1() + m[1][1] * z.z2(),
        )
    }

    pub fn max_abs_diff(&self, o: &CMat2) -> f64 {
        let mut d = 0.0f64;
        for i in 0..2 {
            for k in 0..2 {
                d = d.max((self.0[i][k] - o.0[i][k]).norm());
            }
        }
        d
    }

    /// `max |M†M − 𝟙|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&CMat2::identity())
    }

    pub fn to_real_rep(&self) -> RealRep4 {
        RealRep4::from_map(|z| self.apply(z))
    }
}

impl Mul for CMat2 {
    type Output = CMat2;
    fn mul(self, rhs: CMat2) -> CMat2 {
        let (a, b) = (&self.0, &rhs.0);
        let e = |i: usize, k: usize| a[i][0] * b[0][k] + a[i][1] * b[1][k];
        CMat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

/// `ℝ²⊗ℝ² → ℂ²`: `z₁ = t₀ + i t₂`, `z₂ = −t₁ + i t₃` for tensor coordinates
/// `t` in the `|00⟩, |11⟩, |01⟩, |10⟩` order.
pub fn tensor_to_complex(v: &TensorVec4) -> ComplexPair {
    let t = &v.0;
    ComplexPair::new(t[0], t[2], -t[1], t[3])
}

pub fn complex_to_tensor(z: &ComplexPair) -> TensorVec4 {
    TensorVec4([z.x1, -z.x2, z.y1, z.y2])
}

/// Change of basis from Bell components `(x⁺, x⁻, y⁺, y⁻)` to real-structure
/// components `(x₁, x₂, y₁, y₂)`. Its columns are the images of
/// `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻`.
pub fn bell_basis_matrix() -> RealRep4 {
    let h = FRAC_1_SQRT_2;
    RealRep4(Mat4([
        [h, h, 0.0, 0.0],
        [-h, h, 0.0, 0.0],
        [0.0, 0.0, h, -h],
        [0.0, 0.0, h, h],
    ]))
}

/// `𝖢(z₁, z₂) = (z̄₁, z̄₂)`.
pub fn conjugation(z: &ComplexPair) -> ComplexPair {
    ComplexPair::new(z.x1, -z.y1, z.x2, -z.y2)
}

/// `𝖥(z₁, z₂) = (−z̄₂, z̄₁)`; `𝖥² = −𝟙`.
pub fn flip(z: &ComplexPair) -> ComplexPair {
    ComplexPair::new(-z.x2, z.y2, z.x1, -z.y1)
}

/// `𝒞_@ = (𝟙 + 𝖥)/√2`, the "cat" (beam splitter) operator.
pub fn cat(z: &ComplexPair) -> ComplexPair {
    z.add(&flip(z)).scale(FRAC_1_SQRT_2)
}

fn check_polar(theta: f64) -> Result<f64> {
    check_range("theta", theta, 0.0, PI)
}

/// Spin-½ coherent state `(cos θ/2, e^{iφ} sin θ/2)`.
pub fn coherent_state(theta: f64, phi: f64) -> Result<ComplexPair> {
    check_polar(theta)?;
    let (s, c) = (0.5 * theta).sin_cos();
    Ok(ComplexPair::from_complex(
        Complex64::new(c, 0.0),
        Complex64::from_polar(s, phi),
    ))
}

/// `D^{1/2}(ξ⁻¹)`: the SU(2) element whose columns are the coherent state and
/// its flip.
pub fn d_half_matrix(theta: f64, phi: f64) -> Result<CMat2> {
    let first = coherent_state(theta, phi)?;
    Ok(CMat2::from_columns(&first, &flip(&first)))
}

/// The coherent state as two entangled angles:
/// `(cos θ/2, −sin θ/2 cos φ, sin θ/2 sin φ, 0)` in the `|00⟩, |11⟩, |01⟩, |10⟩`
/// order. The `|π/2⟩|0⟩` coefficient is always 0.
///
/// This equals `complex_to_tensor(coherent_state(θ, φ))` with the `|01⟩` and
/// `|10⟩` coefficients exchanged.
pub fn coherent_to_tensor(theta: f64, phi: f64) -> Result<TensorVec4> {
    check_polar(theta)?;
    let (s, c) = (0.5 * theta).sin_cos();
    let (sp, cp) = phi.sin_cos();
    Ok(TensorVec4([c, -s * cp, s * sp, 0.0]))
}

/// A quaternion `q₀ + q₁ î + q₂ ĵ + q₃ k̂`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    pub fn norm_squared(&self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn max_abs_diff(&self, o: &Quaternion) -> f64 {
        (self.q0 - o.q0)
            .abs()
            .max((self.q1 - o.q1).abs())
            .max((self.q2 - o.q2).abs())
            .max((self.q3 - o.q3).abs())
    }
}

/// Hamilton product, with `ĵk̂ = î`, `k̂î = ĵ`, `îĵ = k̂`.
pub fn hamilton_product(p: &Quaternion, q: &Quaternion) -> Quaternion {
    Quaternion::new(
        p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
        p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
        p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
        p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        hamilton_product(&self, &rhs)
    }
}

/// `Z_q = (q₀ + i q₃, q₂ + i q₁)`, identifying `k̂` with `i`.
pub fn quaternion_to_complex_pair(q: &Quaternion) -> ComplexPair {
    ComplexPair::new(q.q0, q.q3, q.q2, q.q1)
}

pub fn complex_pair_to_quaternion(z: &ComplexPair) -> Quaternion {
    Quaternion::new(z.x1, z.y2, z.x2, z.y1)
}

/// `q ↦ (Z_q, 𝖥 Z_q)`; the determinant is `|q|²`.
pub fn quaternion_matrix(q: &Quaternion) -> CMat2 {
    let z = quaternion_to_complex_pair(q);
    CMat2::from_columns(&z, &flip(&z))
}
