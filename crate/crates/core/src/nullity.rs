//! Nullity-distribution membership of the structure vector field.
//!
//! A frame point's structure vector field `xi` belongs to the kappa-nullity
//! distribution when `R(X, Y) xi = kappa [eta(Y) X - eta(X) Y]` for all X, Y;
//! the (kappa, mu) and (kappa, mu, nu) variants add the shape-operator
//! bracket `mu [eta(Y) S X - eta(X) S Y]` and the phi-composed bracket
//! `nu [eta(Y) Phi S X - eta(X) Phi S Y]`. This module measures the defect of
//! those conditions at given coefficients and solves the inverse problem by
//! least squares, reporting the minimum-norm coefficients, the residual, and
//! the dimension of the exact-fit solution space.
//!
//! For catalog models the memberships have closed forms — a single
//! distinguished curvature `lambda` gives `kappa = c/4 + alpha lambda`, two
//! distinct curvatures force `(kappa, mu) = (c/4, alpha)`, and `nu = 0`
//! always — which [`classify_model`] reports and the fits must reproduce.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::fmt;

use crate::geometry::FramePoint;
use crate::models::ModelSpec;
use crate::{Error, Result};

/// Relative threshold under which a singular value counts as zero when
/// computing the design-matrix rank: catalog matrices have entries O(1)-O(10),
/// so true rank deficiency sits many orders of magnitude below this cut.
pub const RANK_RTOL: f64 = 1e-10;

/// Tolerance under which the xi-eigenvalue counts as zero when deciding
/// closed-form kappa-membership of a multi-curvature model.
const ALPHA_TOL: f64 = 1e-12;

/// The three nested nullity families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NullityFamily {
    /// kappa-nullity: the constant bracket only.
    #[serde(rename = "kappa")]
    K,
    /// (kappa, mu)-nullity: adds the shape-operator bracket.
    #[serde(rename = "kappa-mu")]
    KM,
    /// (kappa, mu, nu)-nullity: adds the phi-composed bracket.
    #[serde(rename = "kappa-mu-nu")]
    KMN,
}

impl NullityFamily {
    /// Number of free coefficients: 1 for K, 2 for KM, 3 for KMN.
    pub fn coefficient_count(&self) -> usize {
        match self {
            NullityFamily::K => 1,
            NullityFamily::KM => 2,
            NullityFamily::KMN => 3,
        }
    }

    /// Zeroes the coefficients the family does not use.
    pub fn mask(&self, mu: f64, nu: f64) -> (f64, f64) {
        match self {
            NullityFamily::K => (0.0, 0.0),
            NullityFamily::KM => (mu, 0.0),
            NullityFamily::KMN => (mu, nu),
        }
    }

    /// Stable identifier used in serialized documents.
    pub fn name(&self) -> &'static str {
        match self {
            NullityFamily::K => "kappa",
            NullityFamily::KM => "kappa-mu",
            NullityFamily::KMN => "kappa-mu-nu",
        }
    }
}

impl fmt::Display for NullityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for NullityFamily {
    type Err = Error;

    /// Accepts the short forms `K`, `KM`, `KMN` and the long kebab-case
    /// names, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "k" | "kappa" => Ok(NullityFamily::K),
            "km" | "kappa-mu" => Ok(NullityFamily::KM),
            "kmn" | "kappa-mu-nu" => Ok(NullityFamily::KMN),
            _ => Err(Error::InvalidNullity(format!(
                "unknown family {s:?}; expected K, KM, or KMN"
            ))),
        }
    }
}

/// Result of a least-squares nullity fit. Coefficients the family does not
/// use are reported as 0. `nullspace_basis` holds orthonormal coefficient
/// vectors (ordered kappa, mu, nu restricted to the family) spanning the
/// directions along which the fit is unconstrained; its length equals
/// `solution_dim`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullityFit {
    pub family: NullityFamily,
    pub kappa: f64,
    pub mu: f64,
    pub nu: f64,
    /// Max-norm defect over all ordered basis pairs at the fitted
    /// coefficients.
    pub residual: f64,
    /// Dimension of the affine space of least-squares-optimal coefficients.
    pub solution_dim: usize,
    pub nullspace_basis: Vec<Vec<f64>>,
}

impl NullityFit {
    /// The fitted coefficients as a (kappa, mu, nu) tuple.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.kappa, self.mu, self.nu)
    }
}

fn standard_basis(m: usize) -> Vec<DVector<f64>> {
    (0..m)
        .map(|i| {
            let mut v = DVector::zeros(m);
            v[i] = 1.0;
            v
        })
        .collect()
}

/// Max-norm defect of the nullity condition at the given coefficients:
///
/// ```text
/// max over ordered pairs (e_i, e_j), i != j, of
///   || R(e_i, e_j) xi - kappa [eta(e_j) e_i   - eta(e_i) e_j]
///                     - mu    [eta(e_j) S e_i  - eta(e_i) S e_j]
///                     - nu    [eta(e_j) PS e_i - eta(e_i) PS e_j] ||_inf
/// ```
///
/// with `PS = Phi S`. Coefficients outside the family are treated as 0. By
/// bilinearity the basis-pair maximum bounds the defect on arbitrary unit
/// pairs up to a factor of m^2.
pub fn membership_residual(
    frame: &FramePoint,
    family: NullityFamily,
    kappa: f64,
    mu: f64,
    nu: f64,
) -> f64 {
    let (mu, nu) = family.mask(mu, nu);
    let m = frame.dim();
    let xi = frame.xi();
    let shape = frame.shape_operator();
    let phi_shape = frame.structure_tensor() * shape;
    let basis = standard_basis(m);
    let eta = |i: usize| if i == frame.xi_index() { 1.0 } else { 0.0 };

    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let mut defect = frame.gauss_curvature_unchecked(&basis[i], &basis[j], &xi);
            let (ei, ej) = (eta(i), eta(j));
            if ej != 0.0 {
                defect.axpy(-kappa * ej, &basis[i], 1.0);
                defect.axpy(-mu * ej, &shape.column(i), 1.0);
                defect.axpy(-nu * ej, &phi_shape.column(i), 1.0);
            }
            if ei != 0.0 {
                defect.axpy(kappa * ei, &basis[j], 1.0);
                defect.axpy(mu * ei, &shape.column(j), 1.0);
                defect.axpy(nu * ei, &phi_shape.column(j), 1.0);
            }
            worst = worst.max(defect.amax());
        }
    }
    worst
}

/// Least-squares fit of the family's coefficients at a frame point.
///
/// Stacks one m-row block per ordered basis pair: the target `R(e_i, e_j) xi`
/// against the family's bracket columns. The system is solved by SVD;
/// singular values below [`RANK_RTOL`] times the largest count as zero, the
/// reported coefficients are the minimum-norm least-squares solution, and
/// `solution_dim` is the column count minus the rank. The residual is
/// re-evaluated through [`membership_residual`] at the fitted coefficients,
/// so the two are consistent by construction.
pub fn fit_nullity(frame: &FramePoint, family: NullityFamily) -> NullityFit {
    let m = frame.dim();
    let cols = family.coefficient_count();
    let xi = frame.xi();
    let shape = frame.shape_operator();
    let phi_shape = frame.structure_tensor() * shape;
    let basis = standard_basis(m);
    let eta = |i: usize| if i == frame.xi_index() { 1.0 } else { 0.0 };

    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut design = DMatrix::zeros(pairs.len() * m, cols);
    let mut target = DVector::zeros(pairs.len() * m);

    for (p, &(i, j)) in pairs.iter().enumerate() {
        let row0 = p * m;
        let b = frame.gauss_curvature_unchecked(&basis[i], &basis[j], &xi);
        target.rows_mut(row0, m).copy_from(&b);
        let (ei, ej) = (eta(i), eta(j));
        design[(row0 + i, 0)] += ej;
        design[(row0 + j, 0)] -= ei;
        for k in 0..m {
            if cols >= 2 {
                design[(row0 + k, 1)] = ej * shape[(k, i)] - ei * shape[(k, j)];
            }
            if cols >= 3 {
                design[(row0 + k, 2)] = ej * phi_shape[(k, i)] - ei * phi_shape[(k, j)];
            }
        }
    }

    let svd = design.svd(true, true);
    let eps = RANK_RTOL * svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let coeffs = svd
        .solve(&target, eps)
        .expect("SVD was computed with both factor sets");
    let v_t = svd.v_t.as_ref().expect("SVD was computed with v_t");
    let nullspace_basis: Vec<Vec<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s <= eps)
        .map(|(idx, _)| v_t.row(idx).iter().copied().collect())
        .collect();

    let kappa = coeffs[0];
    let mu = if cols >= 2 { coeffs[1] } else { 0.0 };
    let nu = if cols >= 3 { coeffs[2] } else { 0.0 };
    let residual = membership_residual(frame, family, kappa, mu, nu);

    NullityFit {
        family,
        kappa,
        mu,
        nu,
        residual,
        solution_dim: cols - rank,
        nullspace_basis,
    }
}

/// Closed-form membership summary for a catalog model: the kappa-nullity
/// value when one exists, the universal (kappa, mu) = (c/4, alpha) solution
/// with the dimension of its solution set, and the forced nu = 0.
#[derive(Debug, Clone, Serialize)]
pub struct ModelClassification {
    pub family: crate::models::ModelFamily,
    pub c: f64,
    pub alpha: f64,
    /// Distinct curvatures on the holomorphic distribution, descending.
    pub lambdas: Vec<f64>,
    /// Whether xi lies in a kappa-nullity distribution (single distinguished
    /// curvature, or vanishing xi-eigenvalue).
    pub kappa_member: bool,
    /// The kappa value when `kappa_member`, `None` otherwise.
    pub kappa: Option<f64>,
    /// The (kappa, mu) solution always contains (c/4, alpha).
    pub km_kappa: f64,
    pub km_mu: f64,
    /// 0 when two or more distinct curvatures pin (kappa, mu) down uniquely;
    /// 1 when a single curvature leaves a line of solutions.
    pub km_solution_dim: usize,
    /// Forced value in the (kappa, mu, nu) family.
    pub nu: f64,
}

/// The closed-form kappa value of a catalog model: `c/4 + alpha lambda` for
/// a single distinguished curvature `lambda`, and `c/4` whenever the
/// xi-eigenvalue vanishes (in particular for every `HopfAxiZero` model).
///
/// A model with several distinct curvatures and a nonzero xi-eigenvalue has
/// no such value — membership would force `alpha lambda_1 = alpha lambda_2` —
/// and is reported as [`Error::NotKappaMember`].
pub fn kappa_of_model(spec: &ModelSpec) -> Result<f64> {
    let data = spec.principal_data()?;
    let c = spec.ambient().c();
    if data.alpha.abs() <= ALPHA_TOL {
        return Ok(c / 4.0);
    }
    match data.single_lambda() {
        Some(lambda) => Ok(c / 4.0 + data.alpha * lambda),
        None => Err(Error::NotKappaMember(format!(
            "model {} has distinct curvatures {:?} with nonzero xi-eigenvalue {}",
            spec.family(),
            data.distinct_lambdas(),
            data.alpha
        ))),
    }
}

/// Closed-form classification of a catalog model across all three families.
pub fn classify_model(spec: &ModelSpec) -> Result<ModelClassification> {
    let data = spec.principal_data()?;
    let c = spec.ambient().c();
    let kappa = match kappa_of_model(spec) {
        Ok(k) => Some(k),
        Err(Error::NotKappaMember(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(ModelClassification {
        family: spec.family(),
        c,
        alpha: data.alpha,
        lambdas: data.distinct_lambdas(),
        kappa_member: kappa.is_some(),
        kappa,
        km_kappa: c / 4.0,
        km_mu: data.alpha,
        km_solution_dim: if data.curvatures.len() == 1 { 1 } else { 0 },
        nu: 0.0,
    })
}
