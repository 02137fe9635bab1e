//! Convex bodies realized as finite intersections of metric balls.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg;
use crate::solver::inner::{self, InnerRadius};
use crate::spaceform::Curvature;
use crate::strata::{self, Stratum};
use crate::{Point, Scalar, SpaceForm};

/// Default membership tolerance for [`Body::contains`].
pub const MEMBERSHIP_TOL: f64 = 1e-12;
/// Boundary samples are refined until `|rho| <= BOUNDARY_TOL`.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Shortest chord accepted by [`Body::base_angle_estimate`].
pub const CHORD_FLOOR: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Scalar> Ball<T> {
    pub fn new(center: Point<T>, radius: T) -> Self {
        Ball { center, radius }
    }
}

/// A point of `∂X` on the sphere of ball `owner`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySample<T> {
    pub point: Point<T>,
    pub owner: usize,
    /// Unit tangent at `point` toward the owner's center.
    pub inward_normal: Vec<T>,
}

/// Result of the chord-based base-angle estimator at one boundary sample.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseAngleEstimate<T> {
    /// `(r, min over directions of 2α/r)` for each requested chord length.
    pub values: Vec<(T, T)>,
    /// Set when the sample sits on more than one sphere; the estimate then
    /// uses the owner's smooth sheet only.
    pub corner: bool,
}

/// Intersection of balls in a model space with certified nonempty interior.
#[derive(Clone, Debug)]
pub struct Body<T> {
    sf: SpaceForm,
    balls: Vec<Ball<T>>,
    strata: Vec<Stratum<T>>,
    inner: InnerRadius<T>,
}

impl<T: Scalar> Body<T> {
    /// Validates the balls and certifies a nonempty interior by locating the
    /// maximizer of `rho`.
    pub fn new(sf: SpaceForm, balls: Vec<Ball<T>>) -> Result<Self> {
        if balls.is_empty() {
            return Err(invalid("a body needs at least one ball"));
        }
        for (i, b) in balls.iter().enumerate() {
            let expected = sf.ambient_dim();
            if b.center.coords().len() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: b.center.coords().len(),
                });
            }
            sf.point(b.center.coords().to_vec())?;
            if !(b.radius > T::zero()) || !b.radius.is_finite() {
                return Err(invalid(format!("ball {i}: radius must be positive")));
            }
            // Closed hemispheres are admitted so that A = 0 is representable.
            if sf.curvature() == Curvature::Spherical && b.radius > T::FRAC_PI_2() {
                return Err(invalid(format!(
                    "ball {i}: spherical radius {} exceeds π/2",
                    b.radius
                )));
            }
        }
        let strata = strata::enumerate(&sf, &balls);
        let inner = inner::enumerate_centers(&sf, &balls);
        if !(inner.value > T::tol(1e-12)) {
            return Err(Error::EmptyInterior {
                max_rho: inner.value.as_f64(),
            });
        }
        Ok(Body {
            sf,
            balls,
            strata,
            inner,
        })
    }

    pub fn space(&self) -> &SpaceForm {
        &self.sf
    }

    pub fn balls(&self) -> &[Ball<T>] {
        &self.balls
    }

    pub fn strata(&self) -> &[Stratum<T>] {
        &self.strata
    }

    /// Inner radius and soul found while certifying the interior.
    pub fn inner(&self) -> &InnerRadius<T> {
        &self.inner
    }

    /// Signed distance to the boundary: `min_i (r_i − |x, c_i|)`.
    pub fn rho(&self, x: &Point<T>) -> T {
        self.rho_raw(x.coords())
    }

    #[inline]
    pub fn rho_raw(&self, x: &[T]) -> T {
        self.balls
            .iter()
            .map(|b| b.radius - self.sf.dist(x, b.center.coords()))
            .fold(T::infinity(), T::min)
    }

    /// `rho` restricted to every ball except `skip`.
    fn rho_except(&self, x: &[T], skip: usize) -> T {
        self.balls
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, b)| b.radius - self.sf.dist(x, b.center.coords()))
            .fold(T::infinity(), T::min)
    }

    pub fn contains(&self, x: &Point<T>) -> bool {
        self.contains_tol(x.coords(), T::tol(MEMBERSHIP_TOL))
    }

    pub fn contains_tol(&self, x: &[T], tol: T) -> bool {
        self.rho_raw(x) >= -tol
    }

    /// Certified lower bound for the base-angle curvature of `∂X`: the
    /// smallest principal curvature over all boundary spheres, `1/r` when
    /// flat and `cot r` on the sphere.
    pub fn base_angle_lower_bound(&self) -> T {
        self.balls
            .iter()
            .map(|b| match self.sf.curvature() {
                Curvature::Flat => b.radius.recip(),
                Curvature::Spherical => (b.radius.cos() / b.radius.sin()).max(T::zero()),
            })
            .fold(T::infinity(), T::min)
    }

    /// Farthest point of `∂X` (hence of `X`) from `p`, found by scanning the
    /// finitely many critical candidates of every boundary stratum.
    pub fn farthest_boundary_point(&self, p: &[T]) -> Option<(T, Vec<T>)> {
        let tol = T::tol(1e-9);
        let mut best: Option<(T, Vec<T>)> = None;
        for s in &self.strata {
            for x in s.farthest_points(p) {
                if !self.contains_tol(&x, tol) {
                    continue;
                }
                let d = self.sf.dist(p, &x);
                if best.as_ref().map_or(true, |(bd, _)| d > *bd) {
                    best = Some((d, x));
                }
            }
        }
        best
    }

    fn sphere_point(&self, owner: usize, u: &[T]) -> Vec<T> {
        let b = &self.balls[owner];
        let c = b.center.coords();
        match self.sf.curvature() {
            Curvature::Flat => linalg::axpy(c, b.radius, u),
            Curvature::Spherical => self.sf.exp(c, u, b.radius),
        }
    }

    /// Random unit tangent at the owner's center.
    fn random_direction(&self, owner: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
        let c = self.balls[owner].center.coords();
        loop {
            let g: Vec<T> = (0..c.len())
                .map(|_| T::lit(StandardNormal.sample(rng)))
                .collect();
            let g = self.sf.to_tangent(c, &g);
            if let Some(u) = linalg::normalized(&g, T::lit(1e-6)) {
                return u;
            }
        }
    }

    /// Snaps `x` radially onto the owner's sphere and builds the sample.
    fn make_sample(&self, owner: usize, x: &[T]) -> Option<BoundarySample<T>> {
        let c = self.balls[owner].center.coords();
        let u = self.sf.direction(c, x)?;
        let point = self.sphere_point(owner, &u);
        let inward_normal = self.sf.direction(&point, c)?;
        Some(BoundarySample {
            point: Point::new_unchecked(point),
            owner,
            inward_normal,
        })
    }

    /// Deterministic boundary sampling.
    ///
    /// Each sphere is sampled uniformly and points outside the other balls are
    /// rejected; the per-sphere budget is proportional to a pilot estimate of
    /// the patch area, with at least one sample on every contributing patch.
    pub fn sample_boundary(&self, target_count: usize, seed: u64) -> Result<Vec<BoundarySample<T>>> {
        if target_count == 0 {
            return Err(invalid("target_count must be at least 1"));
        }
        let m = self.balls.len();
        let tol = T::tol(MEMBERSHIP_TOL);
        let pilot = 256;
        let mut weights = Vec::with_capacity(m);
        for i in 0..m {
            let mut rng = stream(seed, (1 << 32) + i as u64);
            let hits = (0..pilot)
                .filter(|_| {
                    let u = self.random_direction(i, &mut rng);
                    self.rho_except(&self.sphere_point(i, &u), i) >= -tol
                })
                .count();
            let r = self.balls[i].radius;
            let size = match self.sf.curvature() {
                Curvature::Flat => r,
                Curvature::Spherical => r.sin(),
            }
            .powi(self.sf.dim() as i32 - 1);
            weights.push(T::lit(hits as f64 / pilot as f64) * size);
        }
        // Exact critical points catch patches too small for the pilot.
        let mut fallback: Vec<Option<Vec<T>>> = vec![None; m];
        for s in &self.strata {
            for x in s.farthest_points(self.inner.soul.coords()) {
                if self.contains_tol(&x, T::tol(BOUNDARY_TOL)) {
                    for &i in &s.members {
                        fallback[i].get_or_insert_with(|| x.clone());
                    }
                }
            }
        }
        let total: T = weights.iter().copied().sum();
        let mut out = Vec::with_capacity(target_count + m);
        for i in 0..m {
            let contributes = weights[i] > T::zero() || fallback[i].is_some();
            if !contributes {
                continue;
            }
            let share = if total > T::zero() {
                (weights[i] / total * T::lit(target_count as f64)).round().as_f64() as usize
            } else {
                0
            };
            let want = share.max(1);
            let max_attempts = (200 * want).max(2000);
            let mut rng = stream(seed, i as u64);
            let mut got = 0;
            for _ in 0..max_attempts {
                if got == want {
                    break;
                }
                let u = self.random_direction(i, &mut rng);
                let x = self.sphere_point(i, &u);
                if self.rho_except(&x, i) >= -tol {
                    if let Some(s) = self.make_sample(i, &x) {
                        out.push(s);
                        got += 1;
                    }
                }
            }
            if got == 0 {
                if let Some(s) = fallback[i].as_ref().and_then(|x| self.make_sample(i, x)) {
                    out.push(s);
                }
            }
        }
        Ok(out)
    }

    /// Chord estimator of the base angle at a boundary sample.
    ///
    /// For each chord length `r` and each sampled tangent direction `w`, the
    /// chord leaves the sample in direction `cos θ·w + sin θ·n` and `θ` is
    /// bisected until the far endpoint lands on `∂X`; that `θ` is the angle
    /// between the chord and the tangent hyperplane.
    pub fn base_angle_estimate(
        &self,
        sample: &BoundarySample<T>,
        chord_lengths: &[T],
    ) -> Result<BaseAngleEstimate<T>> {
        let x = sample.point.coords();
        let owner = sample.owner;
        let corner = self.balls.len() > 1 && self.rho_except(x, owner) <= T::tol(BOUNDARY_TOL);
        let field = |y: &[T]| {
            if corner {
                let b = &self.balls[owner];
                b.radius - self.sf.dist(y, b.center.coords())
            } else {
                self.rho_raw(y)
            }
        };
        let normal = &sample.inward_normal;
        let mut fixed = vec![normal.clone()];
        if !self.sf.is_flat() {
            fixed.push(x.to_vec());
        }
        let tangent = linalg::complement_basis(&fixed, x.len());
        let dirs = strata::Stratum {
            members: vec![],
            center: vec![T::zero(); x.len()],
            radius: T::one(),
            basis: tangent,
        };
        let dirs = if dirs.basis.len() == 1 {
            let w = dirs.basis[0].clone();
            vec![w.clone(), linalg::scale(&w, -T::one())]
        } else {
            dirs.spread_points()
        };

        let mut values = Vec::with_capacity(chord_lengths.len());
        for &r in chord_lengths {
            if !(r >= T::lit(CHORD_FLOOR) * T::lit(0.999)) {
                return Err(invalid(format!("chord length {r} below the floor {CHORD_FLOOR}")));
            }
            let mut best = T::infinity();
            for w in &dirs {
                let endpoint = |theta: T| {
                    let v = linalg::add(&linalg::scale(w, theta.cos()), &linalg::scale(normal, theta.sin()));
                    field(&self.sf.exp(x, &v, r))
                };
                let (mut lo, mut hi) = (T::zero(), T::FRAC_PI_2());
                if endpoint(hi) <= T::zero() {
                    return Err(Error::ChordTooLong { length: r.as_f64() });
                }
                if endpoint(lo) >= T::zero() {
                    best = best.min(T::zero());
                    continue;
                }
                for _ in 0..200 {
                    let mid = (lo + hi) * T::half();
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if endpoint(mid) < T::zero() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let alpha = (lo + hi) * T::half();
                best = best.min(T::two() * alpha / r);
            }
            values.push((r, best));
        }
        Ok(BaseAngleEstimate { values, corner })
    }
}

/// Independent RNG stream `index` of the generator seeded with `seed`.
pub(crate) fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// The three-ball body that cuts the tip off a lens: balls of radius `1/A`
/// centered at `±(1/A − a, 0, 0)` and `(0, √(2a/A − a²) − ε − 1/A, 0)`.
pub fn make_cutthetip<T: Scalar>(curvature_bound: T, a: T, eps: T) -> Result<Body<T>> {
    let big_a = curvature_bound;
    if !(big_a > T::zero()) {
        return Err(invalid("A must be positive"));
    }
    let r = big_a.recip();
    if !(a > T::zero() && a < r) {
        return Err(invalid(format!("need 0 < a < 1/A, got a = {a}, 1/A = {r}")));
    }
    let rim = (T::two() * a / big_a - a * a).sqrt();
    if !(eps > T::zero() && eps < rim - a) {
        return Err(invalid(format!(
            "need 0 < eps < sqrt(2a/A - a^2) - a = {}, got {eps}",
            rim - a
        )));
    }
    let sf = SpaceForm::flat(3)?;
    let z = T::zero();
    let balls = vec![
        Ball::new(Point::new_unchecked(vec![r - a, z, z]), r),
        Ball::new(Point::new_unchecked(vec![a - r, z, z]), r),
        Ball::new(Point::new_unchecked(vec![z, rim - eps - r, z]), r),
    ];
    Body::new(sf, balls)
}

/// Disk/ball of radius `r` about the origin (flat) or the north pole.
pub fn make_ball<T: Scalar>(sf: SpaceForm, radius: T) -> Result<Body<T>> {
    Body::new(sf, vec![Ball::new(sf.origin(), radius)])
}
