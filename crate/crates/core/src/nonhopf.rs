//! Constraint forcing on the non-Hopf locus.
//!
//! On the open set where `beta = |phi grad| != 0`, a hypersurface carries the
//! orthonormal frame (U, phiU, xi) in which the shape operator reads
//!
//! ```text
//!       | gamma  delta  beta |
//!   S = | delta  rho    0    |
//!       | beta   0      alpha|
//! ```
//!
//! together with connection functions kappa_1, kappa_2, kappa_3 and, in
//! complex dimension n >= 3, one extra component `t` of A U along a unit
//! field Z. The Codazzi equation reduces to scalar identities relating the
//! directional derivatives of these functions; this module encodes those
//! identities, replays the algebraic forcing that each nullity hypothesis
//! imposes on such a state, and certifies the resulting contradictions — a
//! closed-form residual that stays away from zero — both exactly and through
//! a seeded feasibility search over boxes of states.

use serde::Serialize;

use crate::geometry::{AmbientSpace, FramePoint};
use crate::nullity::NullityFamily;
use crate::rng::SplitMix64;
use crate::{Error, Result};

use nalgebra::DMatrix;

/// Smallest |beta| any sampling box may reach: the locus is defined by
/// `beta != 0`, and a positive floor turns emptiness into a quantitative
/// bound.
pub const BETA_MIN: f64 = 1e-3;

/// The frame functions of a non-Hopf state at one point. Fields are public
/// and freely constructible; every operation validates the defining
/// invariants `beta != 0` and `c != 0` before using a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonHopfState {
    /// Ambient holomorphic sectional curvature (nonzero).
    pub c: f64,
    pub alpha: f64,
    /// The defining function of the locus; never zero.
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub rho: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// Coefficient of the extra component of A U along Z; identically 0 in
    /// complex dimension 2.
    pub t: f64,
}

impl NonHopfState {
    /// State with the given curvature and beta; every other function zero.
    pub fn with_beta(c: f64, beta: f64) -> Self {
        Self {
            c,
            alpha: 0.0,
            beta,
            gamma: 0.0,
            delta: 0.0,
            rho: 0.0,
            k1: 0.0,
            k2: 0.0,
            k3: 0.0,
            t: 0.0,
        }
    }

    /// Checks the defining invariants: all entries finite, `beta != 0`,
    /// `c != 0`.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.c, self.alpha, self.beta, self.gamma, self.delta, self.rho, self.k1, self.k2,
            self.k3, self.t,
        ];
        if fields.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidState("all frame functions must be finite".into()));
        }
        if self.beta == 0.0 {
            return Err(Error::InvalidState(
                "beta = 0: the point is not in the non-Hopf locus".into(),
            ));
        }
        if self.c == 0.0 {
            return Err(Error::InvalidState("ambient curvature must be nonzero".into()));
        }
        Ok(())
    }

    /// Embeds the state as a frame point in complex dimension 2, with basis
    /// (U, phiU, xi). Requires `t = 0`: a 3-dimensional frame has no Z slot.
    pub fn to_frame_point(&self) -> Result<FramePoint> {
        self.validate()?;
        if self.t != 0.0 {
            return Err(Error::InvalidState(format!(
                "t = {} but a 3-dimensional frame has no Z slot; t must be 0",
                self.t
            )));
        }
        let ambient = AmbientSpace::new(self.c, 2)?;
        let shape = DMatrix::from_row_slice(
            3,
            3,
            &[
                self.gamma, self.delta, self.beta, //
                self.delta, self.rho, 0.0, //
                self.beta, 0.0, self.alpha,
            ],
        );
        FramePoint::with_canonical_phi(ambient, shape)
    }
}

/// Directional derivatives of the frame functions appearing in the scalar
/// Codazzi identities: xi(delta), (phiU)(alpha), (phiU)(beta), U(delta),
/// (phiU)(gamma). Free values until constrained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DerivativeAssignment {
    pub xi_delta: f64,
    pub phiu_alpha: f64,
    pub phiu_beta: f64,
    pub u_delta: f64,
    pub phiu_gamma: f64,
}

/// Right-hand sides of the four scalar Codazzi identities at a state.
fn codazzi_rhs(s: &NonHopfState) -> [f64; 4] {
    let NonHopfState {
        c,
        alpha,
        beta,
        gamma,
        delta,
        rho,
        k1,
        k2,
        k3,
        ..
    } = *s;
    [
        alpha * gamma + beta * k1 + delta * delta + rho * k3 + c / 4.0
            - gamma * rho
            - gamma * k3
            - beta * beta,
        alpha * beta + beta * k3 - 3.0 * beta * rho,
        alpha * gamma + beta * k1 + 2.0 * delta * delta + c / 2.0 - 2.0 * gamma * rho
            + alpha * rho,
        rho * k1 - k1 * gamma - beta * gamma - 2.0 * delta * k2 - 2.0 * beta * rho,
    ]
}

impl DerivativeAssignment {
    /// The canonical Codazzi-consistent assignment at a state: each
    /// derivative set to its identity's right-hand side, with `U(delta) = 0`
    /// absorbed into `(phiU)(gamma)`.
    pub fn codazzi_consistent(state: &NonHopfState) -> Result<Self> {
        state.validate()?;
        let [r6, r9, r10, r11] = codazzi_rhs(state);
        Ok(Self {
            xi_delta: r6,
            phiu_alpha: r9,
            phiu_beta: r10,
            u_delta: 0.0,
            phiu_gamma: -r11,
        })
    }
}

/// Residuals of the four scalar Codazzi identities:
///
/// ```text
/// r_a = xi(delta)  - [alpha gamma + beta k1 + delta^2 + rho k3 + c/4
///                     - gamma rho - gamma k3 - beta^2]
/// r_b = (phiU)(alpha) - [alpha beta + beta k3 - 3 beta rho]
/// r_c = (phiU)(beta)  - [alpha gamma + beta k1 + 2 delta^2 + c/2
///                     - 2 gamma rho + alpha rho]
/// r_d = (U(delta) - (phiU)(gamma)) - [rho k1 - k1 gamma - beta gamma
///                     - 2 delta k2 - 2 beta rho]
/// ```
///
/// All four vanish exactly when the assignment is Codazzi-consistent; each
/// is affine with unit coefficient in its derivative slots.
pub fn codazzi_residuals(state: &NonHopfState, d: &DerivativeAssignment) -> Result<[f64; 4]> {
    state.validate()?;
    let [r6, r9, r10, r11] = codazzi_rhs(state);
    Ok([
        d.xi_delta - r6,
        d.phiu_alpha - r9,
        d.phiu_beta - r10,
        (d.u_delta - d.phiu_gamma) - r11,
    ])
}

/// One audited step of a forcing chain: the constraint imposed, the identity
/// justifying it, and how far the incoming state was from satisfying it.
#[derive(Debug, Clone, Serialize)]
pub struct ForcingStep {
    pub step: &'static str,
    pub constraint: &'static str,
    pub justification: &'static str,
    pub residual: f64,
}

/// Outcome of replaying the kappa-nullity hypothesis on a non-Hopf state.
#[derive(Debug, Clone, Serialize)]
pub struct KappaForcing {
    /// The input state with `delta` and `rho` zeroed.
    pub state: NonHopfState,
    /// The forced nullity coefficient, always c/4.
    pub kappa: f64,
    /// Residual of the remaining algebraic obligation `alpha gamma = beta^2`
    /// on the input functions.
    pub obligation_residual: f64,
    pub trace: Vec<ForcingStep>,
}

/// Replays the constraints kappa-nullity forces on a non-Hopf state: the
/// off-diagonal shape entries vanish, kappa is pinned to c/4, and
/// `alpha gamma = beta^2` remains as an obligation whose residual is
/// reported, never enforced.
pub fn force_kappa_nullity(state: &NonHopfState) -> Result<KappaForcing> {
    state.validate()?;
    let obligation_residual = (state.alpha * state.gamma - state.beta * state.beta).abs();
    let trace = vec![
        ForcingStep {
            step: "zero-delta",
            constraint: "delta = 0",
            justification: "the (U, xi) component of the nullity condition reads \
                            beta * delta = 0, and beta != 0 on the locus",
            residual: state.delta.abs(),
        },
        ForcingStep {
            step: "kappa-expression",
            constraint: "kappa = c/4 + alpha gamma - beta^2",
            justification: "the (U, xi) curvature component with delta = 0 evaluates \
                            kappa on the U direction",
            residual: 0.0,
        },
        ForcingStep {
            step: "zero-rho",
            constraint: "rho = 0",
            justification: "with delta = 0, the (phiU, xi) component forces \
                            beta * rho = 0",
            residual: state.rho.abs(),
        },
        ForcingStep {
            step: "kappa-value",
            constraint: "kappa = c/4",
            justification: "the (phiU, xi) curvature component, using rho = 0 from the \
                            previous step, evaluates kappa on the phiU direction",
            residual: 0.0,
        },
        ForcingStep {
            step: "gamma-obligation",
            constraint: "alpha gamma = beta^2",
            justification: "equating kappa = c/4 + alpha gamma - beta^2 with kappa = c/4",
            residual: obligation_residual,
        },
    ];
    Ok(KappaForcing {
        state: NonHopfState {
            delta: 0.0,
            rho: 0.0,
            ..*state
        },
        kappa: state.c / 4.0,
        obligation_residual,
        trace,
    })
}

/// Nearest-in-spirit projection of a state onto the obligation surface
/// `alpha gamma = beta^2`: solve for `gamma` when `alpha != 0`, else for
/// `alpha` when `gamma != 0`, else set both to `|beta|`. Also zeroes `delta`
/// and `rho` so the projected state satisfies the full kappa-nullity
/// constraint set.
pub fn project_kappa_obligation(state: &NonHopfState) -> Result<NonHopfState> {
    state.validate()?;
    let beta_sq = state.beta * state.beta;
    let (alpha, gamma) = if state.alpha != 0.0 {
        (state.alpha, beta_sq / state.alpha)
    } else if state.gamma != 0.0 {
        (beta_sq / state.gamma, state.gamma)
    } else {
        (state.beta.abs(), state.beta.abs())
    };
    Ok(NonHopfState {
        alpha,
        gamma,
        delta: 0.0,
        rho: 0.0,
        ..*state
    })
}

/// Tolerance for the algebraic preconditions of
/// [`kappa_contradiction_residual`]; the projection introduces at most a few
/// ulps of defect.
const OBLIGATION_TOL: f64 = 1e-10;

/// The terminal contradiction of the non-Hopf kappa-nullity chain.
///
/// Differentiating the obligation `alpha gamma = beta^2` along phiU and
/// eliminating every derivative through the scalar Codazzi identities (with
/// `U(delta) = xi(delta) = 0`, as all forced functions are constant on the
/// locus) collapses, after reducing with `alpha gamma = beta^2`, to the
/// closed form `(3/4) beta c` — which cannot vanish on a non-flat ambient
/// space, so the constrained locus is empty. Returns `|(3/4) beta c|`.
///
/// Preconditions: `delta = rho = 0` exactly and `alpha gamma = beta^2` to a
/// few ulps (apply [`force_kappa_nullity`] and [`project_kappa_obligation`]
/// first).
pub fn kappa_contradiction_residual(state: &NonHopfState) -> Result<f64> {
    state.validate()?;
    if state.delta != 0.0 || state.rho != 0.0 {
        return Err(Error::Precondition(format!(
            "delta = {}, rho = {}; both must be exactly 0",
            state.delta, state.rho
        )));
    }
    let defect = (state.alpha * state.gamma - state.beta * state.beta).abs();
    let scale = 1.0 + (state.alpha * state.gamma).abs() + state.beta * state.beta;
    if defect > OBLIGATION_TOL * scale {
        return Err(Error::Precondition(format!(
            "alpha gamma - beta^2 = {defect:.3e}; the obligation surface is not satisfied"
        )));
    }
    Ok((0.75 * state.beta * state.c).abs())
}

/// Outcome of replaying the (kappa, mu)- or (kappa, mu, nu)-nullity
/// hypothesis on a non-Hopf state.
#[derive(Debug, Clone, Serialize)]
pub struct KmForcing {
    /// The input state with `delta` and `rho` zeroed.
    pub state: NonHopfState,
    /// Forced coefficient values: always (c/4, 0, 0).
    pub kappa: f64,
    pub mu: f64,
    pub nu: f64,
    /// Whether the nu coefficient participated in the forcing.
    pub with_nu: bool,
    /// Recorded residual of the hypothetical `nu != 0` branch: that branch
    /// forces `gamma = 0`, making the U-component read `beta^2 = 0`, which
    /// `beta != 0` contradicts. `None` when `with_nu` is false.
    pub nu_branch_contradiction: Option<f64>,
    /// Residual of the `alpha gamma = beta^2` obligation the surviving
    /// branch inherits.
    pub obligation_residual: f64,
    /// The surviving branch satisfies exactly the kappa-nullity constraint
    /// set with kappa = c/4, so the kappa contradiction applies; always true.
    pub reduces_to_kappa: bool,
    pub trace: Vec<ForcingStep>,
}

/// Replays the constraints (kappa, mu)-nullity — and with `with_nu` the
/// (kappa, mu, nu) variant — forces on a non-Hopf state. The chain zeroes
/// the off-diagonal shape entries (A phiU = 0), pins kappa = c/4, reads
/// mu = 0 off the xi-component of the combined bracket relation, audits the
/// `nu != 0` branch into the `beta^2 = 0` contradiction, and concludes that
/// the hypothesis reduces to kappa-nullity. The forced values never depend
/// on gamma, k1, k2, k3, or t.
pub fn force_km_nullity(state: &NonHopfState, with_nu: bool) -> Result<KmForcing> {
    state.validate()?;
    let beta_sq = state.beta * state.beta;
    let obligation_residual = (state.alpha * state.gamma - beta_sq).abs();
    let mut trace = vec![
        ForcingStep {
            step: "zero-delta",
            constraint: "delta = 0",
            justification: "the hypothesis makes A phiU a multiple of phiU while its \
                            U-component is delta",
            residual: state.delta.abs(),
        },
        ForcingStep {
            step: "zero-rho",
            constraint: "rho = 0",
            justification: "the remaining phiU-component of A phiU must vanish as well, \
                            so A phiU = 0",
            residual: state.rho.abs(),
        },
        ForcingStep {
            step: "kappa-value",
            constraint: "kappa = c/4",
            justification: "with A phiU = 0 the (phiU, xi) curvature component \
                            evaluates kappa directly",
            residual: 0.0,
        },
        ForcingStep {
            step: "mu-value",
            constraint: "mu = 0",
            justification: "the xi-component of the combined bracket relation reads \
                            mu beta = 0, and beta != 0",
            residual: 0.0,
        },
    ];
    let nu_branch_contradiction = if with_nu {
        trace.push(ForcingStep {
            step: "nu-gamma",
            constraint: "nu gamma = 0",
            justification: "the phiU-component of the combined bracket relation",
            residual: 0.0,
        });
        trace.push(ForcingStep {
            step: "nu-branch-audit",
            constraint: "nu != 0 would force gamma = 0, then the U-component = beta^2",
            justification: "with gamma = 0 and mu = 0 the U-component reduces to beta^2, \
                            which cannot vanish on the locus",
            residual: beta_sq,
        });
        trace.push(ForcingStep {
            step: "nu-value",
            constraint: "nu = 0",
            justification: "the only branch surviving the audit",
            residual: 0.0,
        });
        Some(beta_sq)
    } else {
        None
    };
    trace.push(ForcingStep {
        step: "gamma-obligation",
        constraint: "alpha gamma = beta^2",
        justification: "the U-component of the combined bracket relation with mu = 0",
        residual: obligation_residual,
    });
    trace.push(ForcingStep {
        step: "z-component",
        constraint: "(mu - alpha) t = 0",
        justification: "the Z-component of the combined bracket relation; vanishes \
                        identically in complex dimension 2 where t = 0",
        residual: (state.alpha * state.t).abs(),
    });
    if with_nu {
        trace.push(ForcingStep {
            step: "phiz-component",
            constraint: "nu t = 0",
            justification: "the phiZ-component of the combined bracket relation, \
                            already satisfied by nu = 0",
            residual: 0.0,
        });
    }
    Ok(KmForcing {
        state: NonHopfState {
            delta: 0.0,
            rho: 0.0,
            ..*state
        },
        kappa: state.c / 4.0,
        mu: 0.0,
        nu: 0.0,
        with_nu,
        nu_branch_contradiction,
        obligation_residual,
        reduces_to_kappa: true,
        trace,
    })
}

/// Sampling box for non-Hopf states: `|beta|` is drawn from
/// `[beta_min, beta_max]` with a random sign, every other frame function
/// from `[value_min, value_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleBox {
    pub beta_min: f64,
    pub beta_max: f64,
    pub value_min: f64,
    pub value_max: f64,
}

impl Default for SampleBox {
    fn default() -> Self {
        Self {
            beta_min: BETA_MIN,
            beta_max: 10.0,
            value_min: -10.0,
            value_max: 10.0,
        }
    }
}

impl SampleBox {
    fn validate(&self) -> Result<()> {
        let edges = [self.beta_min, self.beta_max, self.value_min, self.value_max];
        if edges.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSampler("box edges must be finite".into()));
        }
        if self.beta_min < BETA_MIN {
            return Err(Error::InvalidSampler(format!(
                "beta_min = {} is below the floor {BETA_MIN}",
                self.beta_min
            )));
        }
        if self.beta_min > self.beta_max {
            return Err(Error::InvalidSampler(format!(
                "empty beta range [{}, {}]",
                self.beta_min, self.beta_max
            )));
        }
        if self.value_min >= self.value_max {
            return Err(Error::InvalidSampler(format!(
                "empty value range [{}, {}]",
                self.value_min, self.value_max
            )));
        }
        Ok(())
    }
}

/// Deterministic sampler configuration: a seed, a sample count, and the box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub count: usize,
    pub bounds: SampleBox,
}

impl SamplerConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        Self {
            seed,
            count,
            bounds: SampleBox::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(Error::InvalidSampler("count must be at least 1".into()));
        }
        self.bounds.validate()
    }
}

/// Draws one state from the box. The draw order (beta magnitude, beta sign,
/// alpha, gamma, delta, rho, k1, k2, k3) is part of the determinism
/// contract; `t` stays 0.
fn sample_state(rng: &mut SplitMix64, c: f64, bounds: &SampleBox) -> NonHopfState {
    let beta_mag = rng.uniform(bounds.beta_min, bounds.beta_max);
    let beta = if rng.next_bool() { beta_mag } else { -beta_mag };
    let mut draw = || rng.uniform(bounds.value_min, bounds.value_max);
    NonHopfState {
        c,
        alpha: draw(),
        beta,
        gamma: draw(),
        delta: draw(),
        rho: draw(),
        k1: draw(),
        k2: draw(),
        k3: draw(),
        t: 0.0,
    }
}

/// The family's terminal contradiction residual for one sampled state:
/// kappa-nullity (and the reduction every wider family performs) ends at
/// `(3/4)|beta c|` on the obligation surface; the (kappa, mu, nu) family may
/// instead die earlier in the `nu != 0` branch at `beta^2`, so it reports
/// the smaller of the two.
fn terminal_residual(state: &NonHopfState, family: NullityFamily) -> Result<f64> {
    match family {
        NullityFamily::K => {
            let forcing = force_kappa_nullity(state)?;
            kappa_contradiction_residual(&project_kappa_obligation(&forcing.state)?)
        }
        NullityFamily::KM => {
            let forcing = force_km_nullity(state, false)?;
            kappa_contradiction_residual(&project_kappa_obligation(&forcing.state)?)
        }
        NullityFamily::KMN => {
            let forcing = force_km_nullity(state, true)?;
            let reduced =
                kappa_contradiction_residual(&project_kappa_obligation(&forcing.state)?)?;
            let branch = forcing
                .nu_branch_contradiction
                .expect("with_nu = true always records the branch residual");
            Ok(branch.min(reduced))
        }
    }
}

/// Analytic lower bound on the terminal residual over a box: the closed
/// forms are monotone in |beta|, so the bound sits at the box edge.
pub fn analytic_lower_bound(c: f64, family: NullityFamily, bounds: &SampleBox) -> f64 {
    let kappa_bound = 0.75 * bounds.beta_min * c.abs();
    match family {
        NullityFamily::K | NullityFamily::KM => kappa_bound,
        NullityFamily::KMN => kappa_bound.min(bounds.beta_min * bounds.beta_min),
    }
}

/// Result of a feasibility search: the smallest terminal contradiction
/// residual seen over the sampled states, the state attaining it, and the
/// analytic bound it must respect.
#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub family: NullityFamily,
    pub c: f64,
    pub seed: u64,
    pub count: usize,
    pub bounds: SampleBox,
    pub min_residual: f64,
    pub argmin: NonHopfState,
    /// Index of the minimizing sample in the stream (ties keep the lowest).
    pub argmin_index: usize,
    pub analytic_lower_bound: f64,
}

/// Samples `config.count` states from the box (deterministically from the
/// seed), applies the family's forcing chain to each, and reports the
/// minimum terminal contradiction residual. A positive minimum over a box
/// excluding `beta = 0` is the quantitative witness that the constrained
/// locus is empty.
pub fn feasibility_search(
    c: f64,
    family: NullityFamily,
    config: &SamplerConfig,
) -> Result<SearchOutcome> {
    if !c.is_finite() || c == 0.0 {
        return Err(Error::InvalidAmbient(format!(
            "holomorphic sectional curvature must be finite and nonzero, got {c}"
        )));
    }
    config.validate()?;
    let mut rng = SplitMix64::new(config.seed);
    let mut min_residual = f64::INFINITY;
    let mut argmin = None;
    let mut argmin_index = 0;
    for index in 0..config.count {
        let state = sample_state(&mut rng, c, &config.bounds);
        let residual = terminal_residual(&state, family)?;
        if residual < min_residual {
            min_residual = residual;
            argmin = Some(state);
            argmin_index = index;
        }
    }
    Ok(SearchOutcome {
        family,
        c,
        seed: config.seed,
        count: config.count,
        bounds: config.bounds,
        min_residual,
        argmin: argmin.expect("count >= 1 guarantees at least one sample"),
        argmin_index,
        analytic_lower_bound: analytic_lower_bound(c, family, &config.bounds),
    })
}
