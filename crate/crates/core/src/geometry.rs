//! Orthonormal-frame model of a real hypersurface point.
//!
//! The metric is always the identity in the frame, so inner products are dot
//! products and the 1-form `eta` is a coordinate projection onto the
//! distinguished basis slot carrying the structure vector field. A point is
//! therefore described by two matrices: the structure tensor and the shape
//! operator, both expressed in the frame.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::{Error, Result};

/// Tolerance for the algebraic identities a constructed frame must satisfy.
/// Frame entries are closed-form values, accurate to a few ulps, so 1e-12
/// leaves three orders of magnitude of slack.
pub const FRAME_TOL: f64 = 1e-12;

/// The ambient complex space form, fixed by its holomorphic sectional
/// curvature and complex dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmbientSpace {
    c: f64,
    n: usize,
}

impl AmbientSpace {
    /// Requires `c != 0` (non-flat) and `n >= 2`.
    pub fn new(c: f64, n: usize) -> Result<Self> {
        if !c.is_finite() || c == 0.0 {
            return Err(Error::InvalidAmbient(format!(
                "holomorphic sectional curvature must be finite and nonzero, got {c}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidAmbient(format!(
                "complex dimension must be at least 2, got {n}"
            )));
        }
        Ok(Self { c, n })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension of a hypersurface frame, 2n - 1.
    pub fn frame_dim(&self) -> usize {
        2 * self.n - 1
    }
}

/// Canonical structure tensor on an m-dimensional frame (m odd): the basis is
/// ordered (W_1, phi W_1, ..., W_{n-1}, phi W_{n-1}, xi), each pair carries the
/// rotation block [[0, -1], [1, 0]] and the last slot is annihilated.
pub fn canonical_phi(m: usize) -> DMatrix<f64> {
    assert!(m >= 3 && m % 2 == 1, "frame dimension must be odd and >= 3");
    let mut phi = DMatrix::zeros(m, m);
    for p in 0..(m - 1) / 2 {
        phi[(2 * p + 1, 2 * p)] = 1.0;
        phi[(2 * p, 2 * p + 1)] = -1.0;
    }
    phi
}

/// A hypersurface point seen through an orthonormal frame: structure tensor,
/// shape operator, and the basis slot holding the structure vector field.
///
/// Construction validates the almost contact metric identities and the
/// symmetry of the shape operator to [`FRAME_TOL`]; a value of this type is
/// immutable and safe to share.
#[derive(Debug, Clone, PartialEq)]
pub struct FramePoint {
    ambient: AmbientSpace,
    phi: DMatrix<f64>,
    shape: DMatrix<f64>,
    xi_index: usize,
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

impl FramePoint {
    /// Builds a frame point and checks every invariant:
    /// the shape operator is symmetric, the structure tensor is skew,
    /// annihilates the xi slot, squares to `-I + e_xi e_xi^T`, and is
    /// compatible with the metric.
    pub fn new(
        ambient: AmbientSpace,
        phi: DMatrix<f64>,
        shape: DMatrix<f64>,
        xi_index: usize,
    ) -> Result<Self> {
        let m = ambient.frame_dim();
        if phi.nrows() != m || phi.ncols() != m {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor is {}x{}, frame dimension is {m}",
                phi.nrows(),
                phi.ncols()
            )));
        }
        if shape.nrows() != m || shape.ncols() != m {
            return Err(Error::DimensionMismatch(format!(
                "shape operator is {}x{}, frame dimension is {m}",
                shape.nrows(),
                shape.ncols()
            )));
        }
        if xi_index >= m {
            return Err(Error::InvalidFrame(format!(
                "xi index {xi_index} out of range for frame dimension {m}"
            )));
        }

        let sym_defect = max_abs(&(&shape - shape.transpose()));
        if sym_defect > FRAME_TOL {
            return Err(Error::InvalidFrame(format!(
                "shape operator is not symmetric (defect {sym_defect:.3e})"
            )));
        }
        let skew_defect = max_abs(&(&phi + phi.transpose()));
        if skew_defect > FRAME_TOL {
            return Err(Error::InvalidFrame(format!(
                "structure tensor is not skew (defect {skew_defect:.3e})"
            )));
        }
        let phi_xi = phi.column(xi_index).amax();
        if phi_xi > FRAME_TOL {
            return Err(Error::InvalidFrame(format!(
                "structure tensor does not annihilate xi (defect {phi_xi:.3e})"
            )));
        }
        // phi^2 = -I + e_xi e_xi^T
        let mut expected = -DMatrix::<f64>::identity(m, m);
        expected[(xi_index, xi_index)] += 1.0;
        let square_defect = max_abs(&(&phi * &phi - &expected));
        if square_defect > FRAME_TOL {
            return Err(Error::InvalidFrame(format!(
                "structure tensor square defect {square_defect:.3e}"
            )));
        }
        // g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y) on basis pairs, i.e.
        // phi^T phi = I - e_xi e_xi^T.
        let mut gram_expected = DMatrix::<f64>::identity(m, m);
        gram_expected[(xi_index, xi_index)] = 0.0;
        let gram_defect = max_abs(&(phi.transpose() * &phi - gram_expected));
        if gram_defect > FRAME_TOL {
            return Err(Error::InvalidFrame(format!(
                "structure tensor metric-compatibility defect {gram_defect:.3e}"
            )));
        }

        Ok(Self {
            ambient,
            phi,
            shape,
            xi_index,
        })
    }

    /// Frame with the canonical structure tensor and xi in the last slot.
    pub fn with_canonical_phi(ambient: AmbientSpace, shape: DMatrix<f64>) -> Result<Self> {
        let m = ambient.frame_dim();
        Self::new(ambient, canonical_phi(m), shape, m - 1)
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    /// Frame dimension m = 2n - 1.
    pub fn dim(&self) -> usize {
        self.ambient.frame_dim()
    }

    pub fn xi_index(&self) -> usize {
        self.xi_index
    }

    /// The structure vector field as a basis vector.
    pub fn xi(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[self.xi_index] = 1.0;
        v
    }

    /// eta(X): the xi-coordinate of X.
    pub fn eta(&self, x: &DVector<f64>) -> f64 {
        x[self.xi_index]
    }

    pub fn structure_tensor(&self) -> &DMatrix<f64> {
        &self.phi
    }

    pub fn shape_operator(&self) -> &DMatrix<f64> {
        &self.shape
    }

    fn check_dim(&self, v: &DVector<f64>, name: &str) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{name} has length {}, frame dimension is {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// R(X, Y)Z for the induced curvature tensor,
    ///
    /// ```text
    /// R(X,Y)Z = (c/4) [ g(Y,Z) X - g(X,Z) Y + g(pY,Z) pX - g(pX,Z) pY - 2 g(pX,Y) pZ ]
    ///           + g(SY,Z) SX - g(SX,Z) SY
    /// ```
    ///
    /// with p the structure tensor and S the shape operator. Bilinear and
    /// antisymmetric in (X, Y).
    pub fn gauss_curvature(
        &self,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
    ) -> Result<DVector<f64>> {
        self.check_dim(x, "X")?;
        self.check_dim(y, "Y")?;
        self.check_dim(z, "Z")?;
        Ok(self.gauss_curvature_unchecked(x, y, z))
    }

    pub(crate) fn gauss_curvature_unchecked(
        &self,
        x: &DVector<f64>,
        y: &DVector<f64>,
        z: &DVector<f64>,
    ) -> DVector<f64> {
        let quarter_c = self.ambient.c / 4.0;
        let px = &self.phi * x;
        let py = &self.phi * y;
        let pz = &self.phi * z;
        let sx = &self.shape * x;
        let sy = &self.shape * y;

        let mut out = DVector::zeros(self.dim());
        out.axpy(quarter_c * y.dot(z), x, 1.0);
        out.axpy(-quarter_c * x.dot(z), y, 1.0);
        out.axpy(quarter_c * py.dot(z), &px, 1.0);
        out.axpy(-quarter_c * px.dot(z), &py, 1.0);
        out.axpy(-2.0 * quarter_c * px.dot(y), &pz, 1.0);
        out.axpy(sy.dot(z), &sx, 1.0);
        out.axpy(-sx.dot(z), &sy, 1.0);
        out
    }

    /// R(X, Y)xi: the Gauss-equation curvature applied to the structure
    /// vector field. This is the quantity every nullity test consumes.
    pub fn curvature_on_xi(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(x, "X")?;
        self.check_dim(y, "Y")?;
        Ok(self.gauss_curvature_unchecked(x, y, &self.xi()))
    }

    /// The covariant derivative of xi: phi S X.
    pub fn nabla_xi(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        self.check_dim(x, "X")?;
        Ok(&self.phi * (&self.shape * x))
    }

    /// Entrywise max norm of `S phi - phi S`. Vanishes exactly when the shape
    /// operator commutes with the structure tensor, which for catalog frames
    /// characterizes type (A).
    pub fn commutator_a_phi(&self) -> f64 {
        max_abs(&(&self.shape * &self.phi - &self.phi * &self.shape))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn horosphere_frame() -> FramePoint {
        // c = -4, n = 2: single D-curvature 1, alpha = 2.
        let ambient = AmbientSpace::new(-4.0, 2).unwrap();
        let shape = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 2.0]));
        FramePoint::with_canonical_phi(ambient, shape).unwrap()
    }

    fn random_symmetric_frame(rng: &mut SplitMix64, n: usize, scale: f64) -> FramePoint {
        let ambient = AmbientSpace::new(if rng.next_bool() { 4.0 } else { -4.0 }, n).unwrap();
        let m = ambient.frame_dim();
        let raw = DMatrix::from_fn(m, m, |_, _| rng.uniform(-scale, scale));
        let shape = (&raw + raw.transpose()) * 0.5;
        FramePoint::with_canonical_phi(ambient, shape).unwrap()
    }

    #[test]
    fn ambient_rejects_flat_and_low_dimension() {
        assert!(AmbientSpace::new(0.0, 2).is_err());
        assert!(AmbientSpace::new(f64::NAN, 2).is_err());
        assert!(AmbientSpace::new(4.0, 1).is_err());
        assert!(AmbientSpace::new(-4.0, 2).is_ok());
    }

    #[test]
    fn canonical_phi_satisfies_contact_identities() {
        for m in [3usize, 5, 7] {
            let phi = canonical_phi(m);
            let mut expected = -DMatrix::<f64>::identity(m, m);
            expected[(m - 1, m - 1)] = 0.0;
            assert_eq!(&phi * &phi, expected);
            assert_eq!(phi.column(m - 1).amax(), 0.0);
        }
    }

    #[test]
    fn frame_rejects_asymmetric_shape() {
        let ambient = AmbientSpace::new(4.0, 2).unwrap();
        let mut shape = DMatrix::zeros(3, 3);
        shape[(0, 1)] = 1.0; // not symmetric
        let err = FramePoint::with_canonical_phi(ambient, shape).unwrap_err();
        assert!(matches!(err, Error::InvalidFrame(_)));
    }

    #[test]
    fn frame_rejects_bad_structure_tensor() {
        let ambient = AmbientSpace::new(4.0, 2).unwrap();
        let shape = DMatrix::identity(3, 3);
        // A skew tensor that does not square to -I + e e^T.
        let mut phi = DMatrix::zeros(3, 3);
        phi[(0, 1)] = -0.5;
        phi[(1, 0)] = 0.5;
        let err = FramePoint::new(ambient, phi, shape, 2).unwrap_err();
        assert!(matches!(err, Error::InvalidFrame(_)));
    }

    #[test]
    fn gauss_curvature_vanishes_on_equal_arguments() {
        let frame = horosphere_frame();
        let x = DVector::from_vec(vec![0.3, -1.2, 0.7]);
        let r = frame.gauss_curvature(&x, &x, &frame.xi()).unwrap();
        assert!(r.amax() <= 1e-12);
    }

    #[test]
    fn gauss_curvature_rejects_dimension_mismatch() {
        let frame = horosphere_frame();
        let short = DVector::from_vec(vec![1.0, 0.0]);
        let ok = frame.xi();
        assert!(matches!(
            frame.gauss_curvature(&short, &ok, &ok),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn horosphere_sectional_value() {
        // R(W, xi)xi = W for unit W orthogonal to xi: kappa = 1.
        let frame = horosphere_frame();
        let w = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let r = frame.curvature_on_xi(&w, &frame.xi()).unwrap();
        assert!((r - &w).amax() <= 1e-12);
    }

    #[test]
    fn cp2_geodesic_sphere_sectional_value() {
        // r = pi/3, c = 4: R(W, xi)xi = cot^2(pi/3) W = (1/3) W.
        let r = std::f64::consts::FRAC_PI_3;
        let lambda = 1.0 / r.tan();
        let alpha = 2.0 / (2.0 * r).tan();
        let ambient = AmbientSpace::new(4.0, 2).unwrap();
        let shape = DMatrix::from_diagonal(&DVector::from_vec(vec![lambda, lambda, alpha]));
        let frame = FramePoint::with_canonical_phi(ambient, shape).unwrap();
        let w = DVector::from_vec(vec![0.0, 1.0, 0.0]);
        let out = frame.curvature_on_xi(&w, &frame.xi()).unwrap();
        let expected = &w * (1.0 / 3.0);
        assert!((out - expected).amax() <= 1e-12);
    }

    #[test]
    fn ch2_geodesic_sphere_radius_one() {
        // alpha = 2 coth(2), lambda = coth(1); R(W, xi)xi = coth^2(1) W.
        let coth = |t: f64| 1.0 / t.tanh();
        let ambient = AmbientSpace::new(-4.0, 2).unwrap();
        let shape =
            DMatrix::from_diagonal(&DVector::from_vec(vec![coth(1.0), coth(1.0), 2.0 * coth(2.0)]));
        let frame = FramePoint::with_canonical_phi(ambient, shape).unwrap();
        let w = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let out = frame.curvature_on_xi(&w, &frame.xi()).unwrap();
        assert!((out - &w * coth(1.0).powi(2)).amax() <= 1e-12);
    }

    #[test]
    fn nabla_xi_vanishes_on_xi_for_hopf_frames() {
        let frame = horosphere_frame();
        let out = frame.nabla_xi(&frame.xi()).unwrap();
        assert_eq!(out.amax(), 0.0);
    }

    #[test]
    fn nabla_xi_rotates_unit_eigenvector() {
        // Horosphere, S W = W: nabla_xi(W) = phi W, the next basis slot.
        let frame = horosphere_frame();
        let w = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        let out = frame.nabla_xi(&w).unwrap();
        let phi_w = DVector::from_vec(vec![0.0, 1.0, 0.0]);
        assert!((out - phi_w).amax() <= 1e-12);
    }

    #[test]
    fn commutator_vanishes_for_identity_shape() {
        let ambient = AmbientSpace::new(4.0, 3).unwrap();
        let frame = FramePoint::with_canonical_phi(ambient, DMatrix::identity(5, 5)).unwrap();
        assert_eq!(frame.commutator_a_phi(), 0.0);
    }

    #[test]
    fn commutator_detects_off_block_coupling() {
        // Shape operator with gamma = 2, beta = 1, delta = rho = 0 on the
        // (U, phiU, xi) frame. Hand evaluation of S phi - phi S on the U and
        // xi slots gives entries {-gamma, -beta}, so the norm is max(2, 1).
        let ambient = AmbientSpace::new(-4.0, 2).unwrap();
        let shape = DMatrix::from_row_slice(
            3,
            3,
            &[
                2.0, 0.0, 1.0, //
                0.0, 0.0, 0.0, //
                1.0, 0.0, 1.0,
            ],
        );
        let frame = FramePoint::with_canonical_phi(ambient, shape).unwrap();
        let comm = frame.commutator_a_phi();
        assert!((comm - 2.0).abs() <= 1e-12);
        assert!(comm >= 1.0); // at least |beta|
    }

    #[test]
    fn curvature_antisymmetry_and_bianchi_on_random_frames() {
        let mut rng = SplitMix64::new(0x5eed);
        for trial in 0..50 {
            let n = 2 + trial % 3;
            let frame = random_symmetric_frame(&mut rng, n, 2.0);
            let m = frame.dim();
            let basis: Vec<DVector<f64>> = (0..m)
                .map(|i| {
                    let mut v = DVector::zeros(m);
                    v[i] = 1.0;
                    v
                })
                .collect();
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        let rxy = frame.gauss_curvature_unchecked(&basis[i], &basis[j], &basis[k]);
                        let ryx = frame.gauss_curvature_unchecked(&basis[j], &basis[i], &basis[k]);
                        assert!((&rxy + &ryx).amax() <= 1e-12, "antisymmetry failed");
                        let ryz = frame.gauss_curvature_unchecked(&basis[j], &basis[k], &basis[i]);
                        let rzx = frame.gauss_curvature_unchecked(&basis[k], &basis[i], &basis[j]);
                        assert!(
                            (&rxy + &ryz + &rzx).amax() <= 1e-12,
                            "first Bianchi identity failed"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_on_xi_matches_gauss_bit_for_bit() {
        let mut rng = SplitMix64::new(77);
        let frame = random_symmetric_frame(&mut rng, 3, 3.0);
        let m = frame.dim();
        let x = DVector::from_fn(m, |_, _| rng.uniform(-1.0, 1.0));
        let y = DVector::from_fn(m, |_, _| rng.uniform(-1.0, 1.0));
        let a = frame.curvature_on_xi(&x, &y).unwrap();
        let b = frame.gauss_curvature(&x, &y, &frame.xi()).unwrap();
        assert_eq!(a, b);
    }
}
