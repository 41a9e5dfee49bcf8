//! Small dense real matrices: 2x2 operators on the plane and 4x4 operators
//! on the tensor product of two planes.
//!
//! [`Mat4`] indexes the product space lexicographically, `idx = 2 * i_a + i_b`,
//! so the first (pointer, `A`) slot varies slowest. Under this convention
//! `(M ⊗ N)(u ⊗ v) = (M u) ⊗ (N v)`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Zero;

/// A vector in the real plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Outer product `|self⟩⟨other|`.
    pub fn outer(self, other: Vec2) -> Mat2 {
        Mat2::new(
            self.x * other.x,
            self.x * other.y,
            self.y * other.x,
            self.y * other.y,
        )
    }

    /// Tensor product in the lexicographic convention of [`Mat4`].
    pub fn kron(self, other: Vec2) -> [f64; 4] {
        [
            self.x * other.x,
            self.x * other.y,
            self.y * other.x,
            self.y * other.y,
        ]
    }
}

/// A real 2x2 matrix, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

/// First real Pauli matrix.
pub const SIGMA1: Mat2 = Mat2([[0.0, 1.0], [1.0, 0.0]]);
/// Diagonal real Pauli matrix.
pub const SIGMA3: Mat2 = Mat2([[1.0, 0.0], [0.0, -1.0]]);
/// Generator of plane rotations, the real form of `-i σ₂`.
pub const TAU2: Mat2 = Mat2([[0.0, -1.0], [1.0, 0.0]]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2([[a11, a12], [a21, a22]])
    }

    pub fn scalar(a: f64) -> Self {
        Mat2::new(a, 0.0, 0.0, a)
    }

    pub fn a11(&self) -> f64 {
        self.0[0][0]
    }
    pub fn a12(&self) -> f64 {
        self.0[0][1]
    }
    pub fn a21(&self) -> f64 {
        self.0[1][0]
    }
    pub fn a22(&self) -> f64 {
        self.0[1][1]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a11(), self.a21(), self.a12(), self.a22())
    }

    pub fn trace(&self) -> f64 {
        self.a11() + self.a22()
    }

    pub fn det(&self) -> f64 {
        self.a11() * self.a22() - self.a12() * self.a21()
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11() * v.x + self.a12() * v.y,
            self.a21() * v.x + self.a22() * v.y,
        )
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        *self * *other - *other * *self
    }

    /// Tensor (Kronecker) product, lexicographic indexing.
    pub fn kron(&self, other: &Mat2) -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        for ia in 0..2 {
            for ja in 0..2 {
                for ib in 0..2 {
                    for jb in 0..2 {
                        m[2 * ia + ib][2 * ja + jb] = self.0[ia][ja] * other.0[ib][jb];
                    }
                }
            }
        }
        Mat4(m)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn asymmetry(&self) -> f64 {
        (self.a12() - self.a21()).abs()
    }

    /// Closed-form eigendecomposition of the symmetric part of `self`.
    ///
    /// Returns `(λ₊, λ₋)` with `λ₊ ≥ λ₋` and matching unit eigenvectors.
    /// The eigenvector of `λ₊` is `(cos α, sin α)` with `α = ½ atan2(2 a12, a11 − a22)`.
    pub fn symmetric_eigen(&self) -> ([f64; 2], [Vec2; 2]) {
        let off = 0.5 * (self.a12() + self.a21());
        let mean = 0.5 * self.trace();
        let half_diff = 0.5 * (self.a11() - self.a22());
        let radius = half_diff.hypot(off);
        let alpha = 0.5 * (2.0 * off).atan2(2.0 * half_diff);
        let (s, c) = alpha.sin_cos();
        (
            [mean + radius, mean - radius],
            [Vec2::new(c, s), Vec2::new(-s, c)],
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut m = self.0;
        for (row, rrow) in m.iter_mut().zip(rhs.0.iter()) {
            for (x, y) in row.iter_mut().zip(rrow) {
                *x += y;
            }
        }
        Mat2(m)
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, rhs: Mat2) {
        *self = *self + rhs;
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self * -1.0
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, k: f64) -> Mat2 {
        Mat2(self.0.map(|row| row.map(|x| x * k)))
    }
}

impl Mul<Mat2> for f64 {
    type Output = Mat2;
    fn mul(self, m: Mat2) -> Mat2 {
        m * self
    }
}

impl Zero for Mat2 {
    fn zero() -> Self {
        Mat2::ZERO
    }
    fn is_zero(&self) -> bool {
        *self == Mat2::ZERO
    }
}

/// A real 4x4 matrix on `ℝ² ⊗ ℝ²`, row-major, lexicographic product indexing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [[f64; 4]; 4]);

impl Mat4 {
    pub const ZERO: Mat4 = Mat4([[0.0; 4]; 4]);

    pub fn identity() -> Mat4 {
        Mat4::from_fn(|i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> f64) -> Mat4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = f(i, j);
            }
        }
        Mat4(m)
    }

    /// Builds the matrix whose `j`-th column is `column(j)`.
    pub fn from_columns(column: impl Fn(usize) -> [f64; 4]) -> Mat4 {
        let cols: [[f64; 4]; 4] = std::array::from_fn(column);
        Mat4::from_fn(|i, j| cols[j][i])
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn apply(&self, v: &[f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v[j]).sum())
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[f64; 4], w: &[f64; 4]) -> f64 {
        let mw = self.apply(w);
        v.iter().zip(mw.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn column(&self, j: usize) -> [f64; 4] {
        std::array::from_fn(|i| self.0[i][j])
    }

    /// Reduced operator on the second slot: `Tr_A`.
    pub fn partial_trace_first(&self) -> Mat2 {
        let mut m = [[0.0; 2]; 2];
        for (ib, row) in m.iter_mut().enumerate() {
            for (jb, x) in row.iter_mut().enumerate() {
                *x = (0..2).map(|a| self.0[2 * a + ib][2 * a + jb]).sum();
            }
        }
        Mat2(m)
    }

    /// Reduced operator on the first slot: `Tr_B`.
    pub fn partial_trace_second(&self) -> Mat2 {
        let mut m = [[0.0; 2]; 2];
        for (ia, row) in m.iter_mut().enumerate() {
            for (ja, x) in row.iter_mut().enumerate() {
                *x = (0..2).map(|b| self.0[2 * ia + b][2 * ja + b]).sum();
            }
        }
        Mat2(m)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        (*self - *other).max_abs()
    }

    /// `max |MᵀM − 𝟙|`.
    pub fn orthogonality_defect(&self) -> f64 {
        (self.transpose() * *self).max_abs_diff(&Mat4::identity())
    }

    pub fn asymmetry(&self) -> f64 {
        self.max_abs_diff(&self.transpose())
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl AddAssign for Mat4 {
    fn add_assign(&mut self, rhs: Mat4) {
        *self = *self + rhs;
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, rhs: Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self * -1.0
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())
    }
}

impl Mul<f64> for Mat4 {
    type Output = Mat4;
    fn mul(self, k: f64) -> Mat4 {
        Mat4(self.0.map(|row| row.map(|x| x * k)))
    }
}

impl Mul<Mat4> for f64 {
    type Output = Mat4;
    fn mul(self, m: Mat4) -> Mat4 {
        m * self
    }
}

impl Zero for Mat4 {
    fn zero() -> Self {
        Mat4::ZERO
    }
    fn is_zero(&self) -> bool {
        *self == Mat4::ZERO
    }
}

pub(crate) fn norm4(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
