//! Theorem checks on a single body: the five-term inequality chain, equality
//! (rigidity) detection, the comparison profile along the soul-to-boundary
//! geodesic, and the boundary-volume bound.

pub mod report;
pub mod volume;

use serde::Serialize;

use crate::comparison::{self, ComparisonOutcome, ComparisonProfile};
use crate::error::Result;
use crate::linalg;
use crate::solver::{self, GeometrySummary, SolverOptions};
use crate::{Body, Point, Scalar, SpaceForm};

pub use report::{verify_body, VerificationReport, VerifyOptions};
pub use volume::{boundary_volume, check_volume_bound, VolumeCheck, VolumeEstimate, VolumeMethod};

/// Default absolute tolerance on lengths for the chain.
pub const CHAIN_TOL: f64 = 1e-5;
/// Equalities this tight are beyond solver noise; a non-ball body then
/// contradicts the rigidity statements. Looser near-equalities are only
/// reported, since near-equality does not force near-roundness.
pub const EXACT_EQUALITY_TOL: f64 = 1e-9;

/// `a ≤ Rad(X) ≤ b ≤ bound_b(κ, a, A) ≤ R(κ, A)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainResult<T> {
    /// `[a, Rad, b, bound_b, R]`.
    pub terms: [T; 5],
    /// Consecutive differences `terms[i + 1] − terms[i]`.
    pub slacks: [T; 4],
    pub pass: bool,
    pub tol: T,
}

impl<T: Scalar> ChainResult<T> {
    pub fn from_terms(terms: [T; 5], tol: T) -> Self {
        let slacks = [
            terms[1] - terms[0],
            terms[2] - terms[1],
            terms[3] - terms[2],
            terms[4] - terms[3],
        ];
        let pass = slacks.iter().all(|&s| s >= -tol);
        ChainResult {
            terms,
            slacks,
            pass,
            tol,
        }
    }
}

/// Assembles the chain from a computed summary.
pub fn chain_from_summary<T: Scalar>(
    sf: &SpaceForm,
    summary: &GeometrySummary<T>,
    tol: T,
) -> Result<ChainResult<T>> {
    let bound = comparison::bound_b(
        sf.curvature(),
        summary.a,
        summary.curvature_bound,
        T::tol(1e-9),
    )?;
    Ok(ChainResult::from_terms(
        [summary.a, summary.rad, summary.b, bound, summary.model_radius],
        tol,
    ))
}

/// Computes every chain term for `body` and checks the four inequalities.
pub fn verify_chain<T: Scalar>(body: &Body<T>, opts: &SolverOptions, tol: T) -> Result<ChainResult<T>> {
    let summary = solver::summarize(body, opts)?;
    chain_from_summary(body.space(), &summary, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EqualityPattern {
    /// `a = R(κ, A)`
    InnerEqualsModel,
    /// `Rad(X) = R(κ, A)`
    RadiusEqualsModel,
    /// `a = bound_b(κ, a, A)`
    InnerEqualsBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidityFinding<T> {
    pub patterns: Vec<EqualityPattern>,
    /// Hausdorff estimate between the body and `B(soul, a)`, when any
    /// equality fired.
    pub hausdorff: Option<T>,
    /// An equality fired and the body is within `5·tol` of the ball.
    pub rigid: bool,
    /// Some equality holds to [`EXACT_EQUALITY_TOL`], not just to `tol`.
    pub exact: bool,
    /// An exact equality holds but the body is not a ball.
    pub violated: bool,
    /// Spherical `A = 0`: equality bodies include lenses, which the ball
    /// test does not cover, so a non-ball is reported but not a violation.
    pub lens_regime: bool,
}

/// Two-sided Hausdorff estimate between `X` and the ball `B(center, radius)`.
///
/// The `X → B` side is `max(0, sup_{x ∈ X} |center, x| − radius)` with the
/// supremum computed exactly over boundary strata; the `B → X` side samples
/// `∂B` and records how far outside `X` each sample is.
pub fn hausdorff_to_ball<T: Scalar>(body: &Body<T>, center: &Point<T>, radius: T, seed: u64) -> T {
    let sf = body.space();
    let far = body
        .farthest_boundary_point(center.coords())
        .map_or(T::zero(), |(d, _)| d);
    let outward = (far - radius).max(T::zero());
    let mut rng = crate::body::stream(seed, 9000);
    let mut inward = T::zero();
    use rand_distr::{Distribution, StandardNormal};
    for _ in 0..2000 {
        let g: Vec<T> = (0..sf.ambient_dim())
            .map(|_| T::lit(StandardNormal.sample(&mut rng)))
            .collect();
        let Some(u) = linalg::normalized(&sf.to_tangent(center.coords(), &g), T::lit(1e-6)) else {
            continue;
        };
        let y = sf.exp(center.coords(), &u, radius);
        inward = inward.max(-body.rho_raw(&y));
    }
    outward.max(inward)
}

/// Detects the equality cases of the chain and, when one fires, tests that
/// the body is the metric ball `B(soul, a)`. The `a = bound_b` case uses
/// the same ball test as `a = R`.
pub fn check_rigidity<T: Scalar>(
    body: &Body<T>,
    summary: &GeometrySummary<T>,
    tol: T,
    seed: u64,
) -> Result<RigidityFinding<T>> {
    let bound = comparison::bound_b(
        body.space().curvature(),
        summary.a,
        summary.curvature_bound,
        T::tol(1e-9),
    )?;
    let gaps = [
        (EqualityPattern::InnerEqualsModel, summary.model_radius - summary.a),
        (EqualityPattern::RadiusEqualsModel, summary.model_radius - summary.rad),
        (EqualityPattern::InnerEqualsBound, bound - summary.a),
    ];
    let patterns: Vec<_> = gaps.iter().filter(|g| g.1 <= tol).map(|g| g.0).collect();
    let exact = gaps.iter().any(|g| g.1 <= T::tol(EXACT_EQUALITY_TOL));
    let lens_regime = !body.space().is_flat() && summary.curvature_bound <= T::tol(1e-12);
    if patterns.is_empty() {
        return Ok(RigidityFinding {
            patterns,
            hausdorff: None,
            rigid: false,
            exact,
            violated: false,
            lens_regime,
        });
    }
    let h = hausdorff_to_ball(body, &summary.soul, summary.a, seed);
    let rigid = h <= T::lit(5.0) * tol;
    Ok(RigidityFinding {
        patterns,
        hausdorff: Some(h),
        rigid,
        exact,
        violated: exact && !rigid && !lens_regime,
        lens_regime,
    })
}

/// Samples `h(t) = rho(γ(t))` along the geodesic from the soul to the
/// `b`-witness and turns it into `f = md_κ(R − h)` together with the initial
/// data `f(0) = md_κ(R − a)`, `f'(0) = md_κ'(R − a)·cos α₀`, where `α₀` is
/// the angle between `γ'(0)` and the nearest direction to a foot point.
pub fn extract_profile<T: Scalar>(
    body: &Body<T>,
    summary: &GeometrySummary<T>,
    steps: usize,
) -> Result<ComparisonProfile<T>> {
    let sf = body.space();
    let s = summary.soul.coords();
    let dir = sf
        .direction(s, summary.b_witness.coords())
        .ok_or_else(|| crate::error::invalid("soul and witness coincide"))?;
    let alpha0 = foot_angle(body, s, summary.a, &dir);
    let ell = summary.model_radius;
    let gap = (ell - summary.a).max(T::zero());
    let f0 = sf.md(gap);
    let df0 = sf.md_derivative(gap) * alpha0.cos();
    let b = summary.b;
    let steps = steps.max(2);
    let samples = (0..=steps)
        .map(|i| {
            let t = b * T::lit(i as f64) / T::lit(steps as f64);
            let h = if i == 0 { summary.a } else { body.rho_raw(&sf.exp(s, &dir, t)) };
            (t, sf.md(ell - h))
        })
        .collect();
    ComparisonProfile::new(sf.curvature(), f0, df0, samples)
}

/// `α₀ = |γ'(0), ⇑_s^{∂X}|`: smallest angle between `dir` and the
/// directions from `s` to its foot points.
fn foot_angle<T: Scalar>(body: &Body<T>, s: &[T], a: T, dir: &[T]) -> T {
    let sf = body.space();
    let mut best = T::PI();
    for ball in body.balls() {
        let c = ball.center.coords();
        if ball.radius - sf.dist(s, c) > a + T::tol(1e-9) {
            continue;
        }
        // Foot direction points away from the center; at the center every
        // direction reaches a foot point.
        let Some(to_center) = sf.direction(s, c) else {
            return T::zero();
        };
        let cosang = -linalg::dot(&to_center, dir);
        best = best.min(cosang.max(-T::one()).min(T::one()).acos());
    }
    best
}

/// Runs [`extract_profile`] and [`comparison::ode_compare`].
pub fn check_profile<T: Scalar>(
    body: &Body<T>,
    summary: &GeometrySummary<T>,
    steps: usize,
) -> Result<ComparisonOutcome<T>> {
    comparison::ode_compare(&extract_profile(body, summary, steps)?)
}
