//! Catalog of Hopf model hypersurfaces with closed-form principal curvatures.
//!
//! The catalog covers the type (A) families in both ambient signs plus
//! abstract Hopf hypersurfaces with `A xi = 0`, which are represented purely
//! by their pointwise shape-operator data. Closed forms are stored at the
//! normalized curvatures c = 4 and c = -4; any other `c` is reached through
//! the homothety `(c, A, r) -> (s^2 c, s A, r / s)` with `s = sqrt(|c| / 4)`,
//! applied uniformly so one table serves all scales.
//!
//! Every catalog entry is gate-checked at construction: each phi-paired
//! eigenvalue pair must satisfy the Hopf relation
//! `l1 l2 = (alpha/2)(l1 + l2) + c/4`, and families carrying a single
//! distinguished curvature must reproduce their closed-form kappa value.
//! A failing entry is a build error, not a warning.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::geometry::{AmbientSpace, FramePoint};
use crate::{Error, Result};

/// Tolerance for the construction gate checks.
pub const CATALOG_TOL: f64 = 1e-10;

/// Model families. The `Cp*` entries live in positive curvature, the `Ch*`
/// entries in negative curvature; `HopfAxiZero` is admissible in either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelFamily {
    CpGeodesicSphere,
    CpTubeOverCpk,
    ChHorosphere,
    ChGeodesicSphere,
    ChTubeOverChn1,
    ChTubeOverChk,
    HopfAxiZero,
}

impl ModelFamily {
    pub fn requires_radius(&self) -> bool {
        !matches!(self, ModelFamily::ChHorosphere | ModelFamily::HopfAxiZero)
    }

    pub fn requires_subspace_dim(&self) -> bool {
        matches!(self, ModelFamily::CpTubeOverCpk | ModelFamily::ChTubeOverChk)
    }

    /// Sign the ambient curvature must have: +1, -1, or 0 for "either".
    pub fn curvature_sign(&self) -> i8 {
        match self {
            ModelFamily::CpGeodesicSphere | ModelFamily::CpTubeOverCpk => 1,
            ModelFamily::HopfAxiZero => 0,
            _ => -1,
        }
    }

    /// Whether the family is one of the homogeneous type (A) hypersurfaces,
    /// i.e. those whose shape operator commutes with the structure tensor.
    pub fn is_type_a(&self) -> bool {
        !matches!(self, ModelFamily::HopfAxiZero)
    }

    /// Stable identifier used in serialized documents.
    pub fn name(&self) -> &'static str {
        match self {
            ModelFamily::CpGeodesicSphere => "cp-geodesic-sphere",
            ModelFamily::CpTubeOverCpk => "cp-tube-over-cpk",
            ModelFamily::ChHorosphere => "ch-horosphere",
            ModelFamily::ChGeodesicSphere => "ch-geodesic-sphere",
            ModelFamily::ChTubeOverChn1 => "ch-tube-over-chn1",
            ModelFamily::ChTubeOverChk => "ch-tube-over-chk",
            ModelFamily::HopfAxiZero => "hopf-axi-zero",
        }
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelFamily {
    type Err = Error;

    /// Parses the kebab-case family name, case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let families = [
            ModelFamily::CpGeodesicSphere,
            ModelFamily::CpTubeOverCpk,
            ModelFamily::ChHorosphere,
            ModelFamily::ChGeodesicSphere,
            ModelFamily::ChTubeOverChn1,
            ModelFamily::ChTubeOverChk,
            ModelFamily::HopfAxiZero,
        ];
        families
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidModel(format!(
                    "unknown model family {s:?}; expected one of {}",
                    families.map(|f| f.name()).join(", ")
                ))
            })
    }
}

/// A validated catalog entry: ambient space, family, and the family's
/// parameters (radius, sub-space dimension, or the supplied curvature pairs
/// for `HopfAxiZero`).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    ambient: AmbientSpace,
    family: ModelFamily,
    r: Option<f64>,
    k: Option<usize>,
    axi_pairs: Option<Vec<(f64, f64)>>,
}

/// One distinct principal curvature on the holomorphic distribution.
/// `pairs_with` is the index (into the owning list) of the eigenvalue carried
/// by the phi-image of this eigenvalue's directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalCurvature {
    pub lambda: f64,
    pub multiplicity: usize,
    pub pairs_with: usize,
}

/// Principal-curvature data of a Hopf model: the xi-eigenvalue `alpha` and
/// the distinct curvatures on the holomorphic distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipalData {
    pub alpha: f64,
    pub curvatures: Vec<PrincipalCurvature>,
}

impl PrincipalData {
    /// Distinct curvature values on the holomorphic distribution,
    /// in the stored (descending) order.
    pub fn distinct_lambdas(&self) -> Vec<f64> {
        self.curvatures.iter().map(|c| c.lambda).collect()
    }

    /// The single distinguished curvature, if there is exactly one.
    pub fn single_lambda(&self) -> Option<f64> {
        match self.curvatures.as_slice() {
            [only] => Some(only.lambda),
            _ => None,
        }
    }
}

/// Homothety scale from the normalized catalog to curvature `c`.
fn homothety_scale(c: f64) -> f64 {
    (c.abs() / 4.0).sqrt()
}

fn cot(t: f64) -> f64 {
    1.0 / t.tan()
}

fn coth(t: f64) -> f64 {
    1.0 / t.tanh()
}

impl ModelSpec {
    /// Catalog entry for a family parameterized by radius and, for tube
    /// families, the complex dimension of the core sub-space.
    pub fn new(
        ambient: AmbientSpace,
        family: ModelFamily,
        r: Option<f64>,
        k: Option<usize>,
    ) -> Result<Self> {
        if family == ModelFamily::HopfAxiZero {
            return Err(Error::InvalidModel(
                "axi-zero models carry curvature pairs; use ModelSpec::axi_zero".into(),
            ));
        }
        let sign = family.curvature_sign();
        if (sign > 0 && ambient.c() < 0.0) || (sign < 0 && ambient.c() > 0.0) {
            return Err(Error::InvalidModel(format!(
                "family {family} requires c {} 0, got c = {}",
                if sign > 0 { ">" } else { "<" },
                ambient.c()
            )));
        }
        let r = match (family.requires_radius(), r) {
            (true, Some(r)) => {
                if !r.is_finite() || r <= 0.0 {
                    return Err(Error::InvalidModel(format!(
                        "radius must be positive and finite, got {r}"
                    )));
                }
                // In positive curvature the normalized radius must stay
                // inside (0, pi/2).
                if sign > 0 && homothety_scale(ambient.c()) * r >= FRAC_PI_2 {
                    return Err(Error::InvalidModel(format!(
                        "radius {r} outside (0, pi/2) after normalization for c = {}",
                        ambient.c()
                    )));
                }
                Some(r)
            }
            (true, None) => {
                return Err(Error::InvalidModel(format!("family {family} requires a radius")))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidModel(format!("family {family} takes no radius")))
            }
            (false, None) => None,
        };
        let k = match (family.requires_subspace_dim(), k) {
            (true, Some(k)) => {
                if k < 1 || k + 2 > ambient.n() {
                    return Err(Error::InvalidModel(format!(
                        "tube sub-space dimension must satisfy 1 <= k <= n-2, got k = {k}, n = {}",
                        ambient.n()
                    )));
                }
                Some(k)
            }
            (true, None) => {
                return Err(Error::InvalidModel(format!(
                    "family {family} requires the sub-space dimension k"
                )))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidModel(format!(
                    "family {family} takes no sub-space dimension"
                )))
            }
            (false, None) => None,
        };
        let spec = Self {
            ambient,
            family,
            r,
            k,
            axi_pairs: None,
        };
        spec.principal_data()?; // run the construction gate checks now
        Ok(spec)
    }

    /// Abstract Hopf model with `A xi = 0`, described by its phi-paired
    /// curvature values: `pairs[p] = (l1, l2)` means the p-th block carries
    /// eigenvalue `l1` on W and `l2` on phi W. Each pair must satisfy the
    /// Hopf relation with alpha = 0, i.e. `l1 * l2 = c / 4`.
    pub fn axi_zero(ambient: AmbientSpace, pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.len() != ambient.n() - 1 {
            return Err(Error::InvalidModel(format!(
                "axi-zero model in complex dimension {} needs {} curvature pairs, got {}",
                ambient.n(),
                ambient.n() - 1,
                pairs.len()
            )));
        }
        for &(l1, l2) in &pairs {
            if !l1.is_finite() || !l2.is_finite() {
                return Err(Error::InvalidModel("curvature pairs must be finite".into()));
            }
            let res = hopf_relation_residual(0.0, l1, l2, ambient.c());
            if res > CATALOG_TOL {
                return Err(Error::InvalidModel(format!(
                    "pair ({l1}, {l2}) violates the Hopf relation at alpha = 0 \
                     (residual {res:.3e})"
                )));
            }
        }
        let spec = Self {
            ambient,
            family: ModelFamily::HopfAxiZero,
            r: None,
            k: None,
            axi_pairs: Some(pairs),
        };
        spec.principal_data()?;
        Ok(spec)
    }

    /// Canonical axi-zero data: every block carries `(s, s)` in positive
    /// curvature and `(s, -s)` in negative curvature, with `s = sqrt(|c|/4)`.
    pub fn axi_zero_default(ambient: AmbientSpace) -> Result<Self> {
        let s = homothety_scale(ambient.c());
        let pair = if ambient.c() > 0.0 { (s, s) } else { (s, -s) };
        Self::axi_zero(ambient, vec![pair; ambient.n() - 1])
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn family(&self) -> ModelFamily {
        self.family
    }

    pub fn radius(&self) -> Option<f64> {
        self.r
    }

    pub fn subspace_dim(&self) -> Option<usize> {
        self.k
    }

    /// The phi-paired eigenvalue blocks on the holomorphic distribution,
    /// before aggregation: one `(l1, l2)` per 2-plane (W, phi W), plus alpha.
    fn eigen_blocks(&self) -> (f64, Vec<(f64, f64)>) {
        let n = self.ambient.n();
        let s = homothety_scale(self.ambient.c());
        let r0 = self.r.map(|r| s * r);
        match self.family {
            ModelFamily::CpGeodesicSphere => {
                let r0 = r0.unwrap();
                let l = s * cot(r0);
                (s * 2.0 * cot(2.0 * r0), vec![(l, l); n - 1])
            }
            ModelFamily::CpTubeOverCpk => {
                let r0 = r0.unwrap();
                let k = self.k.unwrap();
                let l1 = s * cot(r0);
                let l2 = -s * r0.tan();
                let mut blocks = vec![(l1, l1); n - k - 1];
                blocks.extend(vec![(l2, l2); k]);
                (s * 2.0 * cot(2.0 * r0), blocks)
            }
            ModelFamily::ChHorosphere => (2.0 * s, vec![(s, s); n - 1]),
            ModelFamily::ChGeodesicSphere => {
                let r0 = r0.unwrap();
                let l = s * coth(r0);
                (s * 2.0 * coth(2.0 * r0), vec![(l, l); n - 1])
            }
            ModelFamily::ChTubeOverChn1 => {
                let r0 = r0.unwrap();
                let l = s * r0.tanh();
                (s * 2.0 * coth(2.0 * r0), vec![(l, l); n - 1])
            }
            ModelFamily::ChTubeOverChk => {
                let r0 = r0.unwrap();
                let k = self.k.unwrap();
                let l1 = s * coth(r0);
                let l2 = s * r0.tanh();
                let mut blocks = vec![(l1, l1); n - k - 1];
                blocks.extend(vec![(l2, l2); k]);
                (s * 2.0 * coth(2.0 * r0), blocks)
            }
            ModelFamily::HopfAxiZero => (0.0, self.axi_pairs.clone().unwrap()),
        }
    }

    /// Closed-form principal curvatures, gate-checked against the Hopf
    /// relation and (where the family has one) the closed-form kappa value.
    pub fn principal_data(&self) -> Result<PrincipalData> {
        let (alpha, blocks) = self.eigen_blocks();
        for &(l1, l2) in &blocks {
            let res = hopf_relation_residual(alpha, l1, l2, self.ambient.c());
            if res > CATALOG_TOL {
                return Err(Error::InvalidModel(format!(
                    "catalog gate: pair ({l1}, {l2}) of {} violates the Hopf relation \
                     (residual {res:.3e})",
                    self.family
                )));
            }
        }

        // Aggregate bit-identical eigenvalues, then order descending.
        // (lambda, multiplicity, partner lambda)
        fn add(entries: &mut Vec<(f64, usize, f64)>, l: f64, mult: usize, partner: f64) {
            if let Some(e) = entries.iter_mut().find(|e| e.0 == l) {
                e.1 += mult;
            } else {
                entries.push((l, mult, partner));
            }
        }
        let mut entries: Vec<(f64, usize, f64)> = Vec::new();
        for &(a, b) in &blocks {
            if a == b {
                add(&mut entries, a, 2, a);
            } else {
                add(&mut entries, a, 1, b);
                add(&mut entries, b, 1, a);
            }
        }
        entries.sort_by(|x, y| y.0.total_cmp(&x.0));
        let index_of = |l: f64| entries.iter().position(|e| e.0 == l).unwrap();
        let curvatures: Vec<PrincipalCurvature> = entries
            .iter()
            .map(|&(lambda, multiplicity, partner)| PrincipalCurvature {
                lambda,
                multiplicity,
                pairs_with: index_of(partner),
            })
            .collect();

        let data = PrincipalData { alpha, curvatures };

        debug_assert_eq!(
            data.curvatures.iter().map(|c| c.multiplicity).sum::<usize>(),
            2 * self.ambient.n() - 2
        );

        // Kappa gate: families with a single distinguished curvature (or
        // alpha = 0) must reproduce the closed-form value via c/4 + alpha*l.
        if let Some(kappa_closed) = self.kappa_closed_form() {
            let lambda = data.single_lambda().unwrap_or(0.0);
            let kappa_alg = self.ambient.c() / 4.0 + alpha * lambda;
            let gap = (kappa_alg - kappa_closed).abs();
            if gap > CATALOG_TOL {
                return Err(Error::InvalidModel(format!(
                    "catalog gate: {} disagrees with its closed-form kappa \
                     ({kappa_alg} vs {kappa_closed}, gap {gap:.3e})",
                    self.family
                )));
            }
        }

        Ok(data)
    }

    /// Closed-form value of kappa for families whose structure vector field
    /// lies in a kappa-nullity distribution; `None` for the two-curvature
    /// tube families (which are (kappa, mu)- but not kappa-members).
    pub fn kappa_closed_form(&self) -> Option<f64> {
        let c = self.ambient.c();
        let s = homothety_scale(c);
        let r0 = self.r.map(|r| s * r);
        match self.family {
            ModelFamily::CpGeodesicSphere => Some(s * s * cot(r0.unwrap()).powi(2)),
            ModelFamily::ChGeodesicSphere => Some(s * s * coth(r0.unwrap()).powi(2)),
            ModelFamily::ChTubeOverChn1 => Some(s * s * r0.unwrap().tanh().powi(2)),
            ModelFamily::ChHorosphere => Some(s * s),
            ModelFamily::HopfAxiZero => Some(c / 4.0),
            ModelFamily::CpTubeOverCpk | ModelFamily::ChTubeOverChk => None,
        }
    }

    /// Assembles the catalog data into a frame: the canonical structure
    /// tensor, a diagonal shape operator whose phi-partner slots carry their
    /// paired eigenvalues (blocks ordered descending), and alpha in the last
    /// slot.
    pub fn build_frame(&self) -> Result<FramePoint> {
        self.principal_data()?; // gate checks
        let (alpha, mut blocks) = self.eigen_blocks();
        blocks.sort_by(|a, b| (b.0, b.1).partial_cmp(&(a.0, a.1)).unwrap());
        let m = self.ambient.frame_dim();
        let mut diag = DVector::zeros(m);
        for (p, &(l1, l2)) in blocks.iter().enumerate() {
            diag[2 * p] = l1;
            diag[2 * p + 1] = l2;
        }
        diag[m - 1] = alpha;
        FramePoint::with_canonical_phi(self.ambient, DMatrix::from_diagonal(&diag))
    }

    /// Serializable catalog document for this entry.
    pub fn catalog_entry(&self) -> Result<CatalogEntry> {
        let data = self.principal_data()?;
        Ok(CatalogEntry {
            schema: CATALOG_SCHEMA,
            ambient: self.ambient,
            family: self.family.name(),
            r: self.r,
            k: self.k,
            alpha: data.alpha,
            curvatures: data
                .curvatures
                .iter()
                .map(|c| CatalogCurvature {
                    lambda: c.lambda,
                    mult: c.multiplicity,
                })
                .collect(),
        })
    }
}

/// Schema tag for serialized catalog entries.
pub const CATALOG_SCHEMA: &str = "nullity-lab/catalog/1";

#[derive(Debug, Clone, Serialize)]
pub struct CatalogCurvature {
    pub lambda: f64,
    pub mult: usize,
}

/// Versioned JSON form of a catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub schema: &'static str,
    pub ambient: AmbientSpace,
    pub family: &'static str,
    pub r: Option<f64>,
    pub k: Option<usize>,
    pub alpha: f64,
    pub curvatures: Vec<CatalogCurvature>,
}

/// Absolute defect of the Hopf relation:
/// `| l1 l2 - (alpha/2)(l1 + l2) - c/4 |`.
pub fn hopf_relation_residual(alpha: f64, lambda1: f64, lambda2: f64, c: f64) -> f64 {
    (lambda1 * lambda2 - 0.5 * alpha * (lambda1 + lambda2) - 0.25 * c).abs()
}

/// Result of solving the Hopf relation for the phi-partner eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartnerCurvature {
    Determined(f64),
    /// `lambda1 = alpha/2` with `lambda1 * alpha/2 + c/4 = 0`: the relation
    /// holds for every partner value (the horosphere branch).
    Indeterminate,
}

/// Tolerance deciding the `lambda1 = alpha/2` branch.
const PARTNER_TOL: f64 = 1e-12;

/// Solves `(l1 - alpha/2) l2 = l1 alpha/2 + c/4` for the partner eigenvalue.
/// Errors when `l1 = alpha/2` but the right side is nonzero, which no Hopf
/// hypersurface can realize (it would force `alpha^2 + c != 0` on a
/// degenerate pair).
pub fn phi_partner_curvature(alpha: f64, lambda1: f64, c: f64) -> Result<PartnerCurvature> {
    let denom = lambda1 - 0.5 * alpha;
    let numer = 0.5 * lambda1 * alpha + 0.25 * c;
    if denom.abs() > PARTNER_TOL {
        Ok(PartnerCurvature::Determined(numer / denom))
    } else if numer.abs() <= PARTNER_TOL {
        Ok(PartnerCurvature::Indeterminate)
    } else {
        Err(Error::HopfInconsistency(format!(
            "lambda1 = alpha/2 = {lambda1} but lambda1*alpha/2 + c/4 = {numer}; \
             no Hopf hypersurface admits this pair"
        )))
    }
}
