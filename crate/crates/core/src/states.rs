//! Pure orientation states, projectors, the `ρ_{r,φ}` density family and the
//! `σ_φ` observables of the real plane.
//!
//! State angles live on `[0, 2π)`; density orientations live on `[0, π)`
//! because `ρ_{r,φ+π} = ρ_{r,φ}`. Integrals over the circle (see
//! [`crate::quantization`]) still run over the full `[0, 2π)`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{check_range, Error, Result};
use crate::linalg::{Mat2, Vec2, SIGMA1, SIGMA3};

/// Tolerance used when validating density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;

/// Below this mixing degree the orientation is undefined.
const DEGENERATE_R: f64 = 1e-12;

/// An angle in radians.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub const fn new(radians: f64) -> Self {
        Angle(radians)
    }

    pub fn from_degrees(deg: f64) -> Self {
        Angle(deg.to_radians())
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Representative in `[0, 2π)`, used for pure-state angles.
    pub fn state_canonical(self) -> Angle {
        Angle(reduce(self.0, TAU))
    }

    /// Representative in `[0, π)`, used for density orientations.
    pub fn orientation_canonical(self) -> Angle {
        Angle(reduce(self.0, PI))
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Angle(radians)
    }
}

fn reduce(x: f64, period: f64) -> f64 {
    let y = x.rem_euclid(period);
    // rem_euclid can round up to the period itself for tiny negative inputs
    if y >= period {
        0.0
    } else {
        y
    }
}

/// `|φ⟩ = (cos φ, sin φ)`.
pub fn pure_state(phi: f64) -> Vec2 {
    let (s, c) = phi.sin_cos();
    Vec2::new(c, s)
}

/// Orthogonal projector `E_φ = |φ⟩⟨φ|`.
pub fn projector(phi: f64) -> Mat2 {
    let v = pure_state(phi);
    v.outer(v)
}

/// Plane rotation `R(φ)`.
pub fn rotation(phi: f64) -> Mat2 {
    let (s, c) = phi.sin_cos();
    Mat2::new(c, -s, s, c)
}

/// `σ_φ = cos φ σ₃ + sin φ σ₁ = R(φ) σ₃`, with eigenvalue `+1` on `|φ/2⟩` and
/// `−1` on `|(φ+π)/2⟩`.
pub fn sigma_phi(phi: f64) -> Mat2 {
    let (s, c) = phi.sin_cos();
    SIGMA3 * c + SIGMA1 * s
}

/// Eigenvector of `σ_φ` for the eigenvalue `+1` (`positive`) or `−1`.
pub fn sigma_eigenvector(phi: f64, positive: bool) -> Vec2 {
    if positive {
        pure_state(0.5 * phi)
    } else {
        pure_state(0.5 * (phi + PI))
    }
}

/// The `(r, φ)` coordinates of a real density matrix.
///
/// The orientation is kept canonical in `[0, π)`, and is pinned to 0 for the
/// maximally mixed state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityParams {
    r: f64,
    phi: Angle,
}

impl DensityParams {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        check_range("r", r, 0.0, 1.0)?;
        let phi = if r == 0.0 {
            Angle::ZERO
        } else {
            Angle::new(phi).orientation_canonical()
        };
        Ok(Self { r, phi })
    }

    /// The maximally mixed state `½𝟙`.
    pub fn maximally_mixed() -> Self {
        Self {
            r: 0.0,
            phi: Angle::ZERO,
        }
    }

    /// The pure state `E_φ`.
    pub fn pure(phi: f64) -> Self {
        Self {
            r: 1.0,
            phi: Angle::new(phi).orientation_canonical(),
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi.radians()
    }

    pub fn matrix(&self) -> Mat2 {
        density_matrix(*self)
    }
}

/// Result of [`spectral_decompose`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decomposition {
    pub params: DensityParams,
    /// Set when `r = 0`, where the orientation is arbitrary and reported as 0.
    pub degenerate: bool,
}

/// `ρ_{r,φ} = ½𝟙 + (r/2) σ_{2φ}`.
pub fn density_matrix(p: DensityParams) -> Mat2 {
    density_from_raw(p.r, p.phi.radians())
}

/// `½(𝟙 + r σ_{2φ})` without range checks or canonicalization.
pub(crate) fn density_from_raw(r: f64, phi: f64) -> Mat2 {
    let (s, c) = (2.0 * phi).sin_cos();
    let h = 0.5 * r;
    Mat2::new(0.5 + h * c, h * s, h * s, 0.5 - h * c)
}

/// Recovers `(r, φ)` from a density matrix.
pub fn spectral_decompose(m: &Mat2) -> Result<Decomposition> {
    let asym = m.asymmetry();
    if asym > DENSITY_TOLERANCE {
        return Err(Error::NotSymmetric(asym));
    }
    let tr = m.trace();
    if (tr - 1.0).abs() > DENSITY_TOLERANCE {
        return Err(Error::WrongTrace(tr));
    }
    let diff = m.a11() - m.a22();
    let off = m.a12() + m.a21();
    let r = diff.hypot(off);
    let smallest = 0.5 * (tr - r);
    if smallest < -DENSITY_TOLERANCE {
        return Err(Error::Indefinite(smallest));
    }
    let r = r.min(1.0);
    if r < DEGENERATE_R {
        return Ok(Decomposition {
            params: DensityParams::maximally_mixed(),
            degenerate: true,
        });
    }
    let phi = 0.5 * off.atan2(diff);
    Ok(Decomposition {
        params: DensityParams::new(r, phi)?,
        degenerate: false,
    })
}

/// `τ₂ ρ_{s,θ} τ₂⁻¹ = ρ_{s,θ+π/2}`: conjugation by the generator of rotations
/// turns the orientation by a quarter turn.
pub fn tau2_conjugate(p: DensityParams) -> DensityParams {
    if p.r == 0.0 {
        return p;
    }
    DensityParams {
        r: p.r,
        phi: Angle::new(p.phi.radians() + FRAC_PI_2).orientation_canonical(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::TAU2;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn pure_state_examples() {
        assert_eq!(pure_state(0.0), Vec2::new(1.0, 0.0));
        let v = pure_state(FRAC_PI_2);
        assert!(close(v.x, 0.0, 1e-16) && v.y == 1.0);
        let v = pure_state(FRAC_PI_3);
        assert!(close(v.x, 0.5, 1e-15) && close(v.y, 3f64.sqrt() / 2.0, 1e-15));
    }

    #[test]
    fn projector_examples() {
        assert_eq!(projector(0.0), Mat2::new(1.0, 0.0, 0.0, 0.0));
        assert!(projector(FRAC_PI_2).max_abs_diff(&Mat2::new(0.0, 0.0, 0.0, 1.0)) < 1e-15);
        let half = Mat2::new(0.5, 0.5, 0.5, 0.5);
        assert!(projector(FRAC_PI_4).max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotation(0.0), Mat2::IDENTITY);
        assert!(rotation(FRAC_PI_2).max_abs_diff(&TAU2) < 1e-16);
        let composed = rotation(0.3) * rotation(0.7);
        assert!(composed.max_abs_diff(&rotation(1.0)) < 1e-15);
    }

    #[test]
    fn sigma_phi_examples() {
        assert_eq!(sigma_phi(0.0), SIGMA3);
        assert!(sigma_phi(FRAC_PI_2).max_abs_diff(&SIGMA1) < 1e-16);
        let s = sigma_phi(FRAC_PI_3);
        let v = sigma_eigenvector(FRAC_PI_3, true);
        let sv = s.apply(v);
        assert!(close(sv.x, v.x, 1e-15) && close(sv.y, v.y, 1e-15));
        let w = pure_state(FRAC_PI_6);
        assert!(close(v.x, w.x, 1e-15) && close(v.y, w.y, 1e-15));
    }

    #[test]
    fn density_matrix_examples() {
        let p = DensityParams::new(0.0, 1.234).unwrap();
        assert_eq!(density_matrix(p), Mat2::scalar(0.5));
        let p = DensityParams::new(1.0, 0.0).unwrap();
        assert_eq!(density_matrix(p), Mat2::new(1.0, 0.0, 0.0, 0.0));
        let p = DensityParams::new(1.0, FRAC_PI_4).unwrap();
        assert!(density_matrix(p).max_abs_diff(&Mat2::new(0.5, 0.5, 0.5, 0.5)) < 1e-15);
    }

    #[test]
    fn density_rejects_bad_r() {
        assert!(matches!(
            DensityParams::new(1.5, 0.0),
            Err(Error::OutOfRange { name: "r", .. })
        ));
        assert!(DensityParams::new(-0.1, 0.0).is_err());
        assert!(DensityParams::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn canonical_orientation() {
        let p = DensityParams::new(0.4, 3.5 * PI + 0.2).unwrap();
        assert!(close(p.phi(), 0.5 * PI + 0.2, 1e-12));
        let p = DensityParams::new(0.4, -1e-300).unwrap();
        assert!(p.phi() >= 0.0 && p.phi() < PI);
        assert!(Angle::new(-1e-18).state_canonical().radians() < TAU);
    }

    #[test]
    fn decompose_examples() {
        let d = spectral_decompose(&Mat2::scalar(0.5)).unwrap();
        assert!(d.degenerate);
        assert_eq!((d.params.r(), d.params.phi()), (0.0, 0.0));

        let d = spectral_decompose(&Mat2::new(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!(!d.degenerate);
        assert_eq!((d.params.r(), d.params.phi()), (1.0, 0.0));

        let m = density_matrix(DensityParams::new(0.6, 1.1).unwrap());
        let d = spectral_decompose(&m).unwrap();
        assert!(close(d.params.r(), 0.6, 1e-10) && close(d.params.phi(), 1.1, 1e-10));
    }

    #[test]
    fn decompose_diagnostics() {
        assert!(matches!(
            spectral_decompose(&Mat2::new(0.5, 0.1, 0.2, 0.5)),
            Err(Error::NotSymmetric(_))
        ));
        assert!(matches!(
            spectral_decompose(&Mat2::new(0.7, 0.0, 0.0, 0.7)),
            Err(Error::WrongTrace(_))
        ));
        assert!(matches!(
            spectral_decompose(&Mat2::new(1.2, 0.0, 0.0, -0.2)),
            Err(Error::Indefinite(_))
        ));
    }

    #[test]
    fn tau2_examples() {
        let q = tau2_conjugate(DensityParams::new(0.8, 0.0).unwrap());
        assert!(close(q.phi(), FRAC_PI_2, 1e-15) && q.r() == 0.8);
        let q = tau2_conjugate(DensityParams::new(0.0, 1.0).unwrap());
        assert_eq!(q, DensityParams::maximally_mixed());

        let p = DensityParams::new(0.7, 0.4).unwrap();
        let by_matrix = -(TAU2 * density_matrix(p) * TAU2);
        let expected = density_matrix(DensityParams::new(0.7, 0.4 + FRAC_PI_2).unwrap());
        assert!(by_matrix.max_abs_diff(&expected) < 1e-15);
        assert!(density_matrix(tau2_conjugate(p)).max_abs_diff(&by_matrix) < 1e-15);
    }
}
