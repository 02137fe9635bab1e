//! Intersections of boundary spheres.
//!
//! The boundary of an intersection of balls is stratified by which spheres a
//! point lies on. Every `k`-fold intersection of boundary spheres is itself a
//! round sphere inside an affine subspace of the ambient space, in both model
//! spaces: in `R^n` the subspace comes from pairwise differences of sphere
//! equations, and on `S^n ⊂ R^{n+1}` each spherical sphere is the unit sphere
//! cut by a hyperplane. The extremes of the distance to a fixed point over
//! the boundary therefore lie at finitely many computable candidates.

use crate::linalg::{self, dot};
use crate::spaceform::Curvature;
use crate::{Ball, Scalar, SpaceForm};

/// The round sphere `{x : |x − center| = radius} ∩ (center + span(basis))`.
#[derive(Clone, Debug)]
pub struct Stratum<T> {
    /// Indices of the balls whose boundary spheres meet here.
    pub members: Vec<usize>,
    pub center: Vec<T>,
    pub radius: T,
    /// Orthonormal basis of the direction space of the affine hull.
    pub basis: Vec<Vec<T>>,
}

impl<T: Scalar> Stratum<T> {
    /// Points of this sphere farthest (in ambient Euclidean distance) from
    /// `p`. Both points are returned for 0-spheres; when `p` is equidistant
    /// from the whole sphere a spread of points is returned instead.
    pub fn farthest_points(&self, p: &[T]) -> Vec<Vec<T>> {
        if self.basis.len() == 1 {
            let v = &self.basis[0];
            return vec![
                linalg::axpy(&self.center, self.radius, v),
                linalg::axpy(&self.center, -self.radius, v),
            ];
        }
        let q = linalg::sub(p, &self.center);
        let mut proj = vec![T::zero(); q.len()];
        for v in &self.basis {
            proj = linalg::axpy(&proj, dot(&q, v), v);
        }
        let pn = linalg::norm(&proj);
        if pn > T::tol(1e-12) * (T::one() + self.radius) {
            return vec![linalg::axpy(&self.center, -self.radius / pn, &proj)];
        }
        self.spread_points()
    }

    /// Points `center + radius·u` for every normalized `u` with coefficients
    /// in {−1, 0, 1} over the basis.
    pub fn spread_points(&self) -> Vec<Vec<T>> {
        let k = self.basis.len();
        let mut out = Vec::new();
        let total = 3usize.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut u = vec![T::zero(); self.center.len()];
            for v in &self.basis {
                let coef = T::lit((c % 3) as f64 - 1.0);
                c /= 3;
                u = linalg::axpy(&u, coef, v);
            }
            if let Some(u) = linalg::normalized(&u, T::lit(0.5)) {
                out.push(linalg::axpy(&self.center, self.radius, &u));
            }
        }
        out
    }
}

/// Enumerates every nonempty stratum formed by at most `dim` spheres.
pub fn enumerate<T: Scalar>(sf: &SpaceForm, balls: &[Ball<T>]) -> Vec<Stratum<T>> {
    let m = balls.len();
    let max_k = sf.dim().min(m);
    let mut out = Vec::new();
    for k in 1..=max_k {
        for subset in combinations(m, k) {
            if let Some(s) = intersect(sf, balls, &subset) {
                out.push(s);
            }
        }
    }
    out
}

/// Lexicographic `k`-subsets of `0..m`.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == m - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Intersection of the boundary spheres of `balls[members]`, or `None` when
/// empty or degenerate (linearly dependent constraints).
pub fn intersect<T: Scalar>(sf: &SpaceForm, balls: &[Ball<T>], members: &[usize]) -> Option<Stratum<T>> {
    let n_amb = sf.ambient_dim();
    // Work relative to `base`; the base sphere has radius `base_r` about it.
    let (base, base_r, gs, hs): (Vec<T>, T, Vec<Vec<T>>, Vec<T>) = match sf.curvature() {
        Curvature::Flat => {
            let c0 = balls[members[0]].center.coords();
            let r0 = balls[members[0]].radius;
            let mut gs = Vec::new();
            let mut hs = Vec::new();
            for &j in &members[1..] {
                let d = linalg::sub(balls[j].center.coords(), c0);
                let rj = balls[j].radius;
                hs.push((r0 * r0 - rj * rj + dot(&d, &d)) * T::half());
                gs.push(d);
            }
            (c0.to_vec(), r0, gs, hs)
        }
        Curvature::Spherical => {
            let gs: Vec<Vec<T>> = members
                .iter()
                .map(|&j| balls[j].center.coords().to_vec())
                .collect();
            let hs = members.iter().map(|&j| balls[j].radius.cos()).collect();
            (vec![T::zero(); n_amb], T::one(), gs, hs)
        }
    };
    let offset = if gs.is_empty() {
        vec![T::zero(); n_amb]
    } else {
        let lambda = linalg::solve(&linalg::gram(&gs), &hs, T::tol(1e-10))?;
        gs.iter()
            .zip(&lambda)
            .fold(vec![T::zero(); n_amb], |acc, (g, &l)| linalg::axpy(&acc, l, g))
    };
    let r2 = base_r * base_r - dot(&offset, &offset);
    let slack = T::tol(1e-12) * base_r * base_r;
    if r2 < -slack {
        return None;
    }
    let basis = linalg::complement_basis(&gs, n_amb);
    if basis.is_empty() {
        return None;
    }
    Some(Stratum {
        members: members.to_vec(),
        center: linalg::add(&base, &offset),
        radius: r2.max(T::zero()).sqrt(),
        basis,
    })
}
