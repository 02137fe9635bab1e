//! Inner radius, radius from the soul, and global radius.

pub mod ascent;
pub mod enclosing;
pub mod inner;

use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg;
use crate::{Body, BoundarySample, Point, Scalar};

pub use inner::{inner_radius, InnerRadius};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Boundary samples seeding the enclosing-ball iteration.
    pub samples: usize,
    pub seed: u64,
    /// Stop once the certified gap between the enclosing radius of the point
    /// set and the farthest point of the body falls below this.
    pub rad_tol: f64,
    pub max_rounds: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            samples: 400,
            seed: 0,
            rad_tol: 1e-10,
            max_rounds: 500,
        }
    }
}

/// Everything the inequality chain needs for one body.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometrySummary<T> {
    /// Inner radius `a`.
    pub a: T,
    pub soul: Point<T>,
    pub soul_unique: bool,
    /// `Rad_s(X)`, the largest distance from the soul.
    pub b: T,
    pub b_witness: Point<T>,
    /// Global radius `Rad(X)` (certified upper value).
    pub rad: T,
    /// Lower end of the certified bracket for `Rad(X)`.
    pub rad_lower: T,
    pub center: Point<T>,
    /// Certified base-angle lower bound `A`.
    #[serde(rename = "A")]
    pub curvature_bound: T,
    /// Model radius `R(κ, A)`.
    pub model_radius: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusFromSoul<T> {
    pub value: T,
    pub witness: Point<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalRadius<T> {
    pub value: T,
    pub lower: T,
    pub center: Point<T>,
    pub rounds: usize,
}

/// `Rad_s(X) = sup_{x ∈ ∂X} |s, x|`: exact stratum candidates together with
/// any supplied boundary samples.
pub fn radius_from_soul<T: Scalar>(
    body: &Body<T>,
    soul: &Point<T>,
    samples: &[BoundarySample<T>],
) -> Result<RadiusFromSoul<T>> {
    let sf = body.space();
    if !(body.rho(soul) > T::zero()) {
        return Err(invalid("soul must lie in the interior of the body"));
    }
    let mut best = body.farthest_boundary_point(soul.coords());
    for s in samples {
        let d = sf.dist(soul.coords(), s.point.coords());
        if best.as_ref().map_or(true, |(bd, _)| d > *bd) {
            best = Some((d, s.point.coords().to_vec()));
        }
    }
    let (value, witness) = best.ok_or_else(|| invalid("no boundary points available"))?;
    Ok(RadiusFromSoul {
        value,
        witness: Point::new_unchecked(witness),
    })
}

/// `Rad(X) = inf_p sup_x |p, x|`.
///
/// Starts from the smallest enclosing ball (cap) of a boundary sample and
/// repeatedly adds the exact farthest boundary point from the current center
/// until the enclosing radius and the farthest distance agree.
pub fn global_radius<T: Scalar>(body: &Body<T>, opts: &SolverOptions) -> Result<GlobalRadius<T>> {
    let sf = body.space();
    let soul = &body.inner().soul;
    let mut points: Vec<Vec<T>> = body
        .sample_boundary(opts.samples.max(1), opts.seed)?
        .into_iter()
        .map(|s| s.point.into_coords())
        .collect();
    if let Some((_, far)) = body.farthest_boundary_point(soul.coords()) {
        points.push(far);
    }
    let tol = T::tol(opts.rad_tol);
    let mut last_gap = T::infinity();
    for round in 0..opts.max_rounds {
        let ball = enclosing::min_enclosing(sf, &points, opts.seed.wrapping_add(round as u64));
        if ball.degenerate {
            // No open hemisphere holds X, so every enclosing cap has radius
            // at least π/2 and the soul is as good a center as any.
            let rs = radius_from_soul(body, soul, &[])?;
            return Ok(GlobalRadius {
                value: rs.value,
                lower: T::FRAC_PI_2(),
                center: soul.clone(),
                rounds: round,
            });
        }
        let (far_d, far) = body
            .farthest_boundary_point(&ball.center)
            .ok_or_else(|| invalid("no boundary candidates"))?;
        last_gap = far_d - ball.radius;
        if last_gap <= tol {
            let center = Point::new_unchecked(ball.center);
            if !body.contains_tol(center.coords(), T::tol(1e-7)) {
                return Err(invalid("enclosing center left the body"));
            }
            return Ok(GlobalRadius {
                value: far_d.max(ball.radius),
                lower: ball.radius,
                center,
                rounds: round + 1,
            });
        }
        points.push(far);
    }
    Err(Error::NonConvergence {
        what: "global radius",
        iterations: opts.max_rounds,
        gap: last_gap.as_f64(),
    })
}

/// Largest distance from `soul` over random interior points. Interior points
/// never beat the boundary, so this stays below `Rad_s(X)`.
pub fn interior_radius_check<T: Scalar>(
    body: &Body<T>,
    soul: &Point<T>,
    trial_count: usize,
    seed: u64,
) -> T {
    let sf = body.space();
    let (home, home_r) = body
        .balls()
        .iter()
        .min_by(|a, b| a.radius.partial_cmp(&b.radius).unwrap())
        .map(|b| (b.center.coords().to_vec(), b.radius))
        .unwrap();
    let mut rng = crate::body::stream(seed, 5000);
    let mut best = T::zero();
    for _ in 0..trial_count {
        let g: Vec<T> = (0..home.len())
            .map(|_| T::lit(rng.random::<f64>() * 2.0 - 1.0))
            .collect();
        let Some(u) = linalg::normalized(&sf.to_tangent(&home, &g), T::lit(1e-6)) else {
            continue;
        };
        let frac: f64 = rng.random::<f64>().powf(1.0 / sf.dim() as f64);
        let x = sf.exp(&home, &u, home_r * T::lit(frac));
        if body.rho_raw(&x) > T::zero() {
            best = best.max(sf.dist(soul.coords(), &x));
        }
    }
    best
}

/// Computes `a`, the soul, `b`, `Rad(X)`, `A` and `R(κ, A)`.
pub fn summarize<T: Scalar>(body: &Body<T>, opts: &SolverOptions) -> Result<GeometrySummary<T>> {
    let inner = inner_radius(body);
    let samples = body.sample_boundary(opts.samples.max(1), opts.seed)?;
    let from_soul = radius_from_soul(body, &inner.soul, &samples)?;
    let global = global_radius(body, opts)?;
    let curvature_bound = body.base_angle_lower_bound();
    let model_radius = body.space().model_radius(curvature_bound)?;
    Ok(GeometrySummary {
        a: inner.value,
        soul: inner.soul,
        soul_unique: inner.unique,
        b: from_soul.value,
        b_witness: from_soul.witness,
        rad: global.value,
        rad_lower: global.lower,
        center: global.center,
        curvature_bound,
        model_radius,
    })
}
