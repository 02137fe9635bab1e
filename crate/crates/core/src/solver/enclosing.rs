//! Smallest enclosing ball (flat) or spherical cap (κ = 1) of a finite point
//! set, by Welzl's move-to-front recursion.
//!
//! The ball through a support set `R` is centered in `aff(R)`. For caps the
//! center is the normalized minimum-norm point of `aff(R)` in `R^{n+1}`,
//! which is equidistant from all of `R` in angle; this requires the points
//! to lie in an open hemisphere.

use rand::seq::SliceRandom;

use crate::linalg::{self, dot};
use crate::{Scalar, SpaceForm};

#[derive(Clone, Debug, PartialEq)]
pub struct EnclosingBall<T> {
    pub center: Vec<T>,
    /// Geodesic radius; negative for the empty support set.
    pub radius: T,
    /// Set on the sphere when the points are not contained in an open
    /// hemisphere (the origin lies in their convex hull).
    pub degenerate: bool,
}

impl<T: Scalar> EnclosingBall<T> {
    fn covers(&self, sf: &SpaceForm, p: &[T]) -> bool {
        if self.radius < T::zero() {
            return false;
        }
        sf.dist(&self.center, p) <= self.radius * (T::one() + T::tol(1e-13)) + T::tol(1e-15)
    }
}

/// Smallest enclosing ball of `points`; `seed` fixes the processing order.
pub fn min_enclosing<T: Scalar>(sf: &SpaceForm, points: &[Vec<T>], seed: u64) -> EnclosingBall<T> {
    let mut pts: Vec<Vec<T>> = points.to_vec();
    let mut rng = crate::body::stream(seed, 7);
    pts.shuffle(&mut rng);
    let mut support = Vec::with_capacity(sf.dim() + 1);
    let end = pts.len();
    mtf(sf, &mut pts, end, &mut support)
}

fn mtf<T: Scalar>(
    sf: &SpaceForm,
    pts: &mut [Vec<T>],
    end: usize,
    support: &mut Vec<Vec<T>>,
) -> EnclosingBall<T> {
    let mut ball = from_support(sf, support);
    if support.len() == sf.dim() + 1 || ball.degenerate {
        return ball;
    }
    for i in 0..end {
        if !ball.covers(sf, &pts[i]) {
            support.push(pts[i].clone());
            ball = mtf(sf, pts, i, support);
            support.pop();
            pts[..=i].rotate_right(1);
            if ball.degenerate {
                return ball;
            }
        }
    }
    ball
}

/// Smallest ball with every support point on its boundary.
pub fn from_support<T: Scalar>(sf: &SpaceForm, support: &[Vec<T>]) -> EnclosingBall<T> {
    let Some(x0) = support.first() else {
        return EnclosingBall {
            center: vec![T::zero(); sf.ambient_dim()],
            radius: -T::one(),
            degenerate: false,
        };
    };
    let ds: Vec<Vec<T>> = support[1..].iter().map(|x| linalg::sub(x, x0)).collect();
    let g = linalg::gram(&ds);
    let rhs: Vec<T> = if sf.is_flat() {
        ds.iter().map(|d| dot(d, d) * T::half()).collect()
    } else {
        ds.iter().map(|d| -dot(d, x0)).collect()
    };
    let Some(mu) = linalg::solve(&g, &rhs, T::tol(1e-13)) else {
        return diameter_fallback(sf, support);
    };
    let q = ds
        .iter()
        .zip(&mu)
        .fold(x0.clone(), |acc, (d, &c)| linalg::axpy(&acc, c, d));
    if sf.is_flat() {
        let radius = support
            .iter()
            .map(|x| linalg::dist(x, &q))
            .fold(T::zero(), T::max);
        return EnclosingBall {
            center: q,
            radius,
            degenerate: false,
        };
    }
    let qn = linalg::norm(&q);
    if qn <= T::tol(1e-9) {
        return EnclosingBall {
            center: x0.clone(),
            radius: T::FRAC_PI_2(),
            degenerate: true,
        };
    }
    let center = linalg::scale(&q, qn.recip());
    let radius = support
        .iter()
        .map(|x| sf.dist(x, &center))
        .fold(T::zero(), T::max);
    EnclosingBall {
        center,
        radius,
        degenerate: false,
    }
}

/// Ball on the farthest pair of an affinely degenerate support set.
fn diameter_fallback<T: Scalar>(sf: &SpaceForm, support: &[Vec<T>]) -> EnclosingBall<T> {
    let mut best = (T::neg_infinity(), 0, 0);
    for i in 0..support.len() {
        for j in i + 1..support.len() {
            let d = sf.dist(&support[i], &support[j]);
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    let mid = linalg::scale(&linalg::add(&support[best.1], &support[best.2]), T::half());
    let center = if sf.is_flat() {
        mid
    } else {
        match linalg::normalized(&mid, T::tol(1e-9)) {
            Some(c) => c,
            None => {
                return EnclosingBall {
                    center: support[0].clone(),
                    radius: T::FRAC_PI_2(),
                    degenerate: true,
                }
            }
        }
    };
    let radius = support
        .iter()
        .map(|x| sf.dist(x, &center))
        .fold(T::zero(), T::max);
    EnclosingBall {
        center,
        radius,
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Brute force over all pairs and triples: the smallest ball through some
    /// subset that covers every point.
    fn brute_force_2d(pts: &[Vec<f64>]) -> f64 {
        let sf = SpaceForm::flat(2).unwrap();
        let mut best = f64::INFINITY;
        let n = pts.len();
        let mut consider = |sub: Vec<Vec<f64>>| {
            let b = from_support(&sf, &sub);
            if pts.iter().all(|p| linalg::dist(p, &b.center) <= b.radius + 1e-12) {
                best = best.min(b.radius);
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                consider(vec![pts[i].clone(), pts[j].clone()]);
                for k in j + 1..n {
                    consider(vec![pts[i].clone(), pts[j].clone(), pts[k].clone()]);
                }
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_in_the_plane() {
        let sf = SpaceForm::flat(2).unwrap();
        let mut rng = crate::body::stream(42, 0);
        for trial in 0..40 {
            let pts: Vec<Vec<f64>> = (0..12)
                .map(|_| vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
                .collect();
            let b = min_enclosing(&sf, &pts, trial);
            let oracle = brute_force_2d(&pts);
            assert!((b.radius - oracle).abs() < 1e-12, "{} vs {}", b.radius, oracle);
            assert!(pts.iter().all(|p| linalg::dist(p, &b.center) <= b.radius + 1e-12));
        }
    }

    #[test]
    fn square_corners() {
        let sf = SpaceForm::flat(2).unwrap();
        let pts = vec![
            vec![1.0, 1.0],
            vec![-1.0, 1.0],
            vec![1.0, -1.0],
            vec![-1.0, -1.0],
            vec![0.2, 0.1],
        ];
        let b = min_enclosing(&sf, &pts, 0);
        assert!((b.radius - 2f64.sqrt()).abs() < 1e-14);
        assert!(linalg::norm(&b.center) < 1e-14);
    }

    #[test]
    fn spherical_cap_of_symmetric_points() {
        let sf = SpaceForm::spherical(2).unwrap();
        let t = 0.3f64;
        let pts: Vec<Vec<f64>> = (0..5)
            .map(|k| {
                let phi = k as f64 * 2.0 * std::f64::consts::PI / 5.0;
                vec![t.sin() * phi.cos(), t.sin() * phi.sin(), t.cos()]
            })
            .collect();
        let b = min_enclosing(&sf, &pts, 3);
        assert!((b.radius - t).abs() < 1e-14);
        assert!(linalg::dist(&b.center, &[0.0, 0.0, 1.0]) < 1e-14);
    }

    #[test]
    fn spherical_points_around_the_equator_are_degenerate() {
        let sf = SpaceForm::spherical(2).unwrap();
        let pts: Vec<Vec<f64>> = (0..6)
            .map(|k| {
                let phi = k as f64 * std::f64::consts::PI / 3.0;
                vec![phi.cos(), phi.sin(), 0.0]
            })
            .collect();
        assert!(min_enclosing(&sf, &pts, 0).degenerate);
    }

    #[test]
    fn three_dimensional_tetrahedron() {
        let sf = SpaceForm::flat(3).unwrap();
        let pts = vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
            vec![0.0, 0.0, 0.5],
        ];
        let b = min_enclosing(&sf, &pts, 1);
        assert!((b.radius - 3f64.sqrt()).abs() < 1e-14);
    }
}
