//! Seeded random bodies whose radii certify a target base-angle bound.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::body::stream;
use crate::error::{Error, Result};
use crate::spaceform::Curvature;
use crate::{linalg, Ball, Body, Point, Scalar, SpaceForm};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenConfig {
    pub curvature: Curvature,
    pub dim: usize,
    /// Inclusive range of ball counts.
    pub balls: (usize, usize),
    /// Inclusive range of radii; must lie in `(0, R(κ, A))`.
    pub radius: (f64, f64),
    /// Target base-angle bound `A`.
    #[serde(rename = "target_A")]
    pub target_a: f64,
    pub max_retries: usize,
}

impl GenConfig {
    /// Two to four balls with radii in `[0.3·R, R]` for `R = R(κ, A)`, or
    /// `[0.3, 1]` when `R` is unbounded.
    pub fn new(curvature: Curvature, dim: usize, target_a: f64) -> Self {
        let r = SpaceForm::new(curvature, dim)
            .and_then(|sf| sf.model_radius(target_a))
            .unwrap_or(1.0);
        GenConfig {
            curvature,
            dim,
            balls: (2, 4),
            radius: (0.3 * r, r),
            target_a,
            max_retries: 1000,
        }
    }

    /// Radius range `[lo·R, R]` for the configured `A`.
    pub fn with_model_fraction(mut self, lo: f64) -> Result<Self> {
        let r = self.space()?.model_radius(self.target_a)?;
        self.radius = (lo * r, r);
        Ok(self)
    }

    pub fn space(&self) -> Result<SpaceForm> {
        SpaceForm::new(self.curvature, self.dim)
    }

    fn validate(&self) -> Result<SpaceForm> {
        let sf = self.space()?;
        let (lo, hi) = self.radius;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radius range [{lo}, {hi}] must satisfy 0 < min <= max"
            )));
        }
        if !(self.target_a >= 0.0) {
            return Err(Error::InvalidParameter("target A must be nonnegative".into()));
        }
        let limit = match sf.model_radius(self.target_a) {
            Ok(r) => r,
            Err(Error::UnboundedModelRadius) => f64::INFINITY,
            Err(e) => return Err(e),
        };
        if hi > limit * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "max radius {hi} exceeds the model radius {limit} for A = {}",
                self.target_a
            )));
        }
        if self.balls.0 == 0 || self.balls.0 > self.balls.1 {
            return Err(Error::InvalidParameter(format!(
                "ball count range [{}, {}] must satisfy 1 <= min <= max",
                self.balls.0, self.balls.1
            )));
        }
        Ok(sf)
    }
}

/// Draws a body: each ball's center sits at a uniformly random point of the
/// ball of radius `0.95·r` about the origin (flat) or the pole (sphere), so
/// the base point is always interior. Candidates that still fail
/// construction are redrawn up to `max_retries` times.
pub fn generate_body<T: Scalar>(cfg: &GenConfig, seed: u64) -> Result<Body<T>> {
    let sf = cfg.validate()?;
    let mut rng = stream(seed, 0);
    let mut last = None;
    for _ in 0..cfg.max_retries.max(1) {
        let m = rng.random_range(cfg.balls.0..=cfg.balls.1);
        let mut balls = Vec::with_capacity(m);
        for _ in 0..m {
            let r = if cfg.radius.0 < cfg.radius.1 {
                rng.random_range(cfg.radius.0..=cfg.radius.1)
            } else {
                cfg.radius.0
            };
            let offset = 0.95 * r * rng.random::<f64>().powf(1.0 / sf.dim() as f64);
            let center = offset_center::<T>(&sf, &mut rng, T::lit(offset));
            balls.push(Ball::new(center, T::lit(r)));
        }
        match Body::new(sf, balls) {
            Ok(b) => return Ok(b),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::InvalidParameter(format!(
        "no valid body after {} attempts: {}",
        cfg.max_retries,
        last.map_or_else(String::new, |e| e.to_string())
    )))
}

fn offset_center<T: Scalar>(sf: &SpaceForm, rng: &mut impl Rng, dist: T) -> Point<T> {
    let base: Point<T> = sf.origin();
    loop {
        let g: Vec<T> = (0..sf.ambient_dim())
            .map(|_| T::lit(StandardNormal.sample(rng)))
            .collect();
        if let Some(u) = linalg::normalized(&sf.to_tangent(base.coords(), &g), T::lit(1e-6)) {
            let c = sf.exp(base.coords(), &u, dist);
            return match sf.curvature() {
                Curvature::Flat => Point::new_unchecked(c),
                Curvature::Spherical => sf.project(c).expect("exp stays on the sphere"),
            };
        }
    }
}
