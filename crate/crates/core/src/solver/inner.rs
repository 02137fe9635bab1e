//! Inner radius `a = max rho` and the soul.
//!
//! `−rho(x) = max_i (|x, c_i| − r_i)` is convex (flat case) and its minimizer
//! is pinned by at most `n + 1` balls that are simultaneously active. The
//! minimizer lies in the convex hull of those balls' centers (flat) or in
//! their cone (sphere), so for every small subset of balls we solve the
//! "all equally active" system in closed form and keep the candidate with
//! the largest `rho`. This is exact up to rounding.

use crate::linalg::{self, dot};
use crate::spaceform::Curvature;
use crate::strata::combinations;
use crate::{Ball, Body, Point, Scalar, SpaceForm};

#[derive(Clone, Debug, PartialEq)]
pub struct InnerRadius<T> {
    /// `a = max_x rho(x)`.
    pub value: T,
    /// The maximizer.
    pub soul: Point<T>,
    /// Balls active at the soul.
    pub active: Vec<usize>,
    /// `false` when a second, distinct maximizer was found.
    pub unique: bool,
}

fn rho<T: Scalar>(sf: &SpaceForm, balls: &[Ball<T>], x: &[T]) -> T {
    balls
        .iter()
        .map(|b| b.radius - sf.dist(x, b.center.coords()))
        .fold(T::infinity(), T::min)
}

/// Exact inner radius by enumeration of active sets.
pub fn enumerate_centers<T: Scalar>(sf: &SpaceForm, balls: &[Ball<T>]) -> InnerRadius<T> {
    let m = balls.len();
    let mut candidates: Vec<Vec<T>> = Vec::new();
    for k in 1..=(sf.dim() + 1).min(m) {
        for subset in combinations(m, k) {
            match sf.curvature() {
                Curvature::Flat => flat_candidates(balls, &subset, &mut candidates),
                Curvature::Spherical => spherical_candidates(balls, &subset, &mut candidates),
            }
        }
    }
    let mut best_val = T::neg_infinity();
    let mut best: Option<Vec<T>> = None;
    let mut scored = Vec::with_capacity(candidates.len());
    for x in candidates {
        if x.iter().any(|v| !v.is_finite()) {
            continue;
        }
        let v = rho(sf, balls, &x);
        if v > best_val {
            best_val = v;
            best = Some(x.clone());
        }
        scored.push((v, x));
    }
    let soul = best.unwrap_or_else(|| balls[0].center.coords().to_vec());
    let value = best_val.max(rho(sf, balls, balls[0].center.coords()));
    let value_tol = T::tol(1e-10);
    let unique = !scored
        .iter()
        .any(|(v, x)| *v >= value - value_tol && sf.dist(x, &soul) > T::lit(1e-4));
    let active = balls
        .iter()
        .enumerate()
        .filter(|(_, b)| b.radius - sf.dist(&soul, b.center.coords()) <= value + value_tol)
        .map(|(i, _)| i)
        .collect();
    InnerRadius {
        value,
        soul: Point::new_unchecked(soul),
        active,
        unique,
    }
}

/// Points `x ∈ aff(c_S)` with `|x − c_i| = r_i − a` for all `i ∈ S`.
fn flat_candidates<T: Scalar>(balls: &[Ball<T>], subset: &[usize], out: &mut Vec<Vec<T>>) {
    let c0 = balls[subset[0]].center.coords();
    let r0 = balls[subset[0]].radius;
    let ds: Vec<Vec<T>> = subset[1..]
        .iter()
        .map(|&j| linalg::sub(balls[j].center.coords(), c0))
        .collect();
    // <y, d_j> = u_j + a w_j with y = x − c0 ∈ span(d)
    let u: Vec<T> = subset[1..]
        .iter()
        .zip(&ds)
        .map(|(&j, d)| {
            let rj = balls[j].radius;
            (dot(d, d) - rj * rj + r0 * r0) * T::half()
        })
        .collect();
    let w: Vec<T> = subset[1..].iter().map(|&j| balls[j].radius - r0).collect();
    let dim = c0.len();
    let (yu, yw) = if ds.is_empty() {
        (vec![T::zero(); dim], vec![T::zero(); dim])
    } else {
        let g = linalg::gram(&ds);
        let (Some(lu), Some(lw)) = (
            linalg::solve(&g, &u, T::tol(1e-12)),
            linalg::solve(&g, &w, T::tol(1e-12)),
        ) else {
            return;
        };
        let comb = |l: &[T]| {
            ds.iter()
                .zip(l)
                .fold(vec![T::zero(); dim], |acc, (d, &c)| linalg::axpy(&acc, c, d))
        };
        (comb(&lu), comb(&lw))
    };
    // |y_u + a y_w|² = (r0 − a)²
    let qa = dot(&yw, &yw) - T::one();
    let qb = T::two() * (dot(&yu, &yw) + r0);
    let qc = dot(&yu, &yu) - r0 * r0;
    for a in quadratic_roots(qa, qb, qc) {
        out.push(linalg::add(c0, &linalg::axpy(&yu, a, &yw)));
    }
}

/// Unit `x ∈ span(c_S)` with `<x, c_i> = cos(r_i − a)` for all `i ∈ S`.
fn spherical_candidates<T: Scalar>(balls: &[Ball<T>], subset: &[usize], out: &mut Vec<Vec<T>>) {
    let cs: Vec<Vec<T>> = subset
        .iter()
        .map(|&j| balls[j].center.coords().to_vec())
        .collect();
    let cr: Vec<T> = subset.iter().map(|&j| balls[j].radius.cos()).collect();
    let sr: Vec<T> = subset.iter().map(|&j| balls[j].radius.sin()).collect();
    let g = linalg::gram(&cs);
    let (Some(lc), Some(ls)) = (
        linalg::solve(&g, &cr, T::tol(1e-12)),
        linalg::solve(&g, &sr, T::tol(1e-12)),
    ) else {
        return;
    };
    let dim = cs[0].len();
    let comb = |l: &[T]| {
        cs.iter()
            .zip(l)
            .fold(vec![T::zero(); dim], |acc, (c, &k)| linalg::axpy(&acc, k, c))
    };
    let (xc, xs) = (comb(&lc), comb(&ls));
    // x = cos a·xc + sin a·xs with |x| = 1:
    //   P cos 2a + Q sin 2a = 1 − (α + γ)/2
    let (al, be, ga) = (dot(&xc, &xc), dot(&xc, &xs), dot(&xs, &xs));
    let p = (al - ga) * T::half();
    let q = be;
    let amp = p.hypot(q);
    if amp <= T::tol(1e-14) {
        return;
    }
    let rhs = (T::one() - (al + ga) * T::half()) / amp;
    if rhs.abs() > T::one() + T::tol(1e-9) {
        return;
    }
    let phi = q.atan2(p);
    let psi = rhs.max(-T::one()).min(T::one()).acos();
    for two_a in [phi + psi, phi - psi] {
        let a = two_a * T::half();
        let x = linalg::axpy(&linalg::scale(&xc, a.cos()), a.sin(), &xs);
        if let Some(x) = linalg::normalized(&x, T::lit(1e-6)) {
            out.push(linalg::scale(&x, -T::one()));
            out.push(x);
        }
    }
}

/// Real roots of `qa x² + qb x + qc`, treating a nearly vanishing
/// discriminant as a double root.
fn quadratic_roots<T: Scalar>(qa: T, qb: T, qc: T) -> Vec<T> {
    let scale = qa.abs().max(qb.abs()).max(qc.abs());
    if scale == T::zero() {
        return vec![];
    }
    if qa.abs() <= T::tol(1e-14) * scale {
        return if qb.abs() > T::tol(1e-14) * scale {
            vec![-qc / qb]
        } else {
            vec![]
        };
    }
    let mut disc = qb * qb - T::lit(4.0) * qa * qc;
    if disc < T::zero() {
        if disc > -T::tol(1e-12) * scale * scale {
            disc = T::zero();
        } else {
            return vec![];
        }
    }
    let sq = disc.sqrt();
    let t = -(qb + qb.signum() * sq) * T::half();
    if t == T::zero() {
        return vec![T::zero()];
    }
    vec![t / qa, qc / t]
}

/// Inner radius of a constructed body.
pub fn inner_radius<T: Scalar>(body: &Body<T>) -> InnerRadius<T> {
    body.inner().clone()
}
