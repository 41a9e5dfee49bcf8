//! Quantum description of angles in the real plane.
//!
//! Real density matrices on `ℝ²` ([`states`]), the integral quantization of
//! functions on the circle ([`quantization`]), von Neumann measurement of a
//! polarisation-like angle ([`measurement`]), Bell-type inequalities for
//! entangled angles versus hidden-variable models ([`bell`]), and the
//! isomorphisms `ℝ²⊗ℝ² ≅ ℂ² ≅ ℍ` ([`iso`]).
//!
//! Heavy numerical loops go through [`exec::Execution`], which is parallel
//! (rayon) when the `parallel` feature is on and produces results that are
//! bit-for-bit identical to the sequential path.

pub mod bell;
pub mod error;
pub mod exec;
pub mod iso;
pub mod linalg;
pub mod measurement;
pub mod quantization;
pub mod states;

pub use error::{Error, Result};
pub use exec::Execution;
pub use linalg::{Mat2, Mat4, Vec2};
pub use states::{density_matrix, spectral_decompose, Angle, DensityParams};
