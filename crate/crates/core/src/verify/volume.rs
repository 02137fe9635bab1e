//! `(n−1)`-volume of `∂X` for flat bodies.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaceform::sphere_volume;
use crate::{linalg, Body, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VolumeMethod {
    /// Arc-interval intersection; planar bodies only.
    Exact,
    MonteCarlo { samples_per_sphere: usize },
}

impl VolumeMethod {
    /// Exact in the plane, Monte Carlo otherwise.
    pub fn auto(dim: usize, samples_per_sphere: usize) -> Self {
        if dim == 2 {
            VolumeMethod::Exact
        } else {
            VolumeMethod::MonteCarlo { samples_per_sphere }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate<T> {
    pub value: T,
    /// Zero for the exact method.
    pub std_error: T,
    pub method: VolumeMethod,
    pub warning: Option<String>,
}

/// Ball `j` duplicates an earlier ball `i < j`; only the first copy owns the
/// shared boundary.
fn duplicate_of_earlier<T: Scalar>(body: &Body<T>, j: usize) -> bool {
    let balls = body.balls();
    let tol = T::tol(1e-12);
    (0..j).any(|i| {
        (balls[i].radius - balls[j].radius).abs() <= tol
            && linalg::dist(balls[i].center.coords(), balls[j].center.coords()) <= tol
    })
}

/// Boundary volume of a flat body.
pub fn boundary_volume<T: Scalar>(body: &Body<T>, method: VolumeMethod, seed: u64) -> Result<VolumeEstimate<T>> {
    let sf = body.space();
    if !sf.is_flat() {
        return Err(Error::HypothesisNotMet(
            "boundary volume is only checked for flat bodies".into(),
        ));
    }
    match method {
        VolumeMethod::Exact => {
            if sf.dim() != 2 {
                return Err(Error::InvalidParameter(format!(
                    "exact boundary volume needs dim 2, got {}",
                    sf.dim()
                )));
            }
            let value = (0..body.balls().len())
                .map(|i| arc_length(body, i))
                .fold(T::zero(), |s, x| s + x);
            Ok(VolumeEstimate {
                value,
                std_error: T::zero(),
                method,
                warning: None,
            })
        }
        VolumeMethod::MonteCarlo { samples_per_sphere } => {
            if samples_per_sphere == 0 {
                return Err(Error::InvalidParameter("need at least one sample per sphere".into()));
            }
            let parts: Vec<(T, T)> = (0..body.balls().len())
                .into_par_iter()
                .map(|i| sphere_fraction(body, i, samples_per_sphere, seed))
                .collect();
            let value = parts.iter().fold(T::zero(), |s, p| s + p.0);
            let var = parts.iter().fold(T::zero(), |s, p| s + p.1 * p.1);
            let warning = (sf.dim() >= 4).then(|| {
                format!(
                    "dim {}: Monte Carlo variance grows with dimension; treat the 3-sigma slack as indicative",
                    sf.dim()
                )
            });
            Ok(VolumeEstimate {
                value,
                std_error: var.sqrt(),
                method,
                warning,
            })
        }
    }
}

/// Length of the part of circle `i` lying in every other disk.
fn arc_length<T: Scalar>(body: &Body<T>, i: usize) -> T {
    let two_pi = T::two() * T::PI();
    let balls = body.balls();
    let (ci, ri) = (balls[i].center.coords(), balls[i].radius);
    if duplicate_of_earlier(body, i) {
        return T::zero();
    }
    // Allowed set as sorted disjoint intervals in [0, 2π).
    let mut allowed = vec![(T::zero(), two_pi)];
    for (j, bj) in balls.iter().enumerate() {
        if j == i {
            continue;
        }
        let cj = bj.center.coords();
        let (dx, dy) = (cj[0] - ci[0], cj[1] - ci[1]);
        let d = (dx * dx + dy * dy).sqrt();
        let rj = bj.radius;
        if d <= T::tol(1e-12) {
            if (rj - ri).abs() <= T::tol(1e-12) || rj > ri {
                continue;
            }
            return T::zero();
        }
        let k = (ri * ri + d * d - rj * rj) / (T::two() * ri * d);
        if k <= -T::one() {
            continue;
        }
        if k >= T::one() {
            return T::zero();
        }
        let phi = dy.atan2(dx);
        let w = k.acos();
        let arc = arc_intervals(phi - w, T::two() * w, two_pi);
        allowed = intersect(&allowed, &arc);
        if allowed.is_empty() {
            return T::zero();
        }
    }
    allowed.iter().fold(T::zero(), |s, &(lo, hi)| s + (hi - lo)) * ri
}

/// The arc `[start, start + len]` as intervals in `[0, 2π)`.
fn arc_intervals<T: Scalar>(start: T, len: T, two_pi: T) -> Vec<(T, T)> {
    let mut s = start % two_pi;
    if s < T::zero() {
        s += two_pi;
    }
    let e = s + len;
    if e <= two_pi {
        vec![(s, e)]
    } else {
        vec![(T::zero(), e - two_pi), (s, two_pi)]
    }
}

fn intersect<T: Scalar>(a: &[(T, T)], b: &[(T, T)]) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if hi > lo {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite endpoints"));
    out
}

/// `(area, standard error)` of the part of sphere `i` inside all other balls.
fn sphere_fraction<T: Scalar>(body: &Body<T>, i: usize, samples: usize, seed: u64) -> (T, T) {
    if duplicate_of_earlier(body, i) {
        return (T::zero(), T::zero());
    }
    let sf = body.space();
    let n = sf.dim();
    let balls = body.balls();
    let (ci, ri) = (balls[i].center.coords(), balls[i].radius);
    let mut rng = crate::body::stream(seed, (2u64 << 32) + i as u64);
    let mut g = vec![0.0f64; n];
    let mut x = vec![T::zero(); n];
    let mut hits = 0usize;
    for _ in 0..samples {
        let norm = loop {
            for v in g.iter_mut() {
                *v = StandardNormal.sample(&mut rng);
            }
            let s = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if s > 1e-12 {
                break s;
            }
        };
        for k in 0..n {
            x[k] = ci[k] + ri * T::lit(g[k] / norm);
        }
        let inside = balls.iter().enumerate().all(|(j, b)| {
            if j == i {
                return true;
            }
            let cj = b.center.coords();
            let d2 = (0..n).fold(T::zero(), |s, k| s + (x[k] - cj[k]) * (x[k] - cj[k]));
            d2 <= b.radius * b.radius
        });
        if inside {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    let area = sphere_volume::<T>(n - 1) * ri.powi(n as i32 - 1);
    let se = (p * (1.0 - p) / samples as f64).sqrt();
    (area * T::lit(p), area * T::lit(se))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeCheck<T> {
    pub estimate: VolumeEstimate<T>,
    /// `|S^{n−1}|`.
    pub bound: T,
    pub pass: bool,
    /// Volume within `tol` of the bound.
    pub equality: bool,
    /// Hausdorff distance to the unit disk about the soul, when equality is
    /// detected on an exact planar perimeter.
    pub hausdorff: Option<T>,
    pub rigid: bool,
}

/// Checks `Vol_{n−1}(∂X) ≤ |S^{n−1}|` on a flat body with all radii at most 1.
pub fn check_volume_bound<T: Scalar>(
    body: &Body<T>,
    method: VolumeMethod,
    tol: T,
    seed: u64,
) -> Result<VolumeCheck<T>> {
    let sf = body.space();
    if !sf.is_flat() {
        return Err(Error::HypothesisNotMet("volume bound needs kappa = 0".into()));
    }
    if body.base_angle_lower_bound() < T::one() - T::tol(1e-12) {
        return Err(Error::HypothesisNotMet(
            "volume bound needs base angle at least 1 (radii at most 1)".into(),
        ));
    }
    let estimate = boundary_volume(body, method, seed)?;
    let bound = sf.unit_sphere_volume::<T>();
    let slack = T::lit(3.0) * estimate.std_error + T::tol(1e-9);
    let mut pass = estimate.value <= bound + slack;
    let equality = (bound - estimate.value).abs() <= tol;
    let mut hausdorff = None;
    let mut rigid = false;
    if equality && method == VolumeMethod::Exact {
        let h = super::hausdorff_to_ball(body, &body.inner().soul, T::one(), seed);
        rigid = h <= T::lit(5.0) * tol;
        pass &= rigid;
        hausdorff = Some(h);
    }
    Ok(VolumeCheck {
        estimate,
        bound,
        pass,
        equality,
        hausdorff,
        rigid,
    })
}
