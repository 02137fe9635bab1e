//! The two model spaces: flat `R^n` (κ = 0) and the unit sphere `S^n` (κ = 1).
//!
//! Sphere points are stored as unit vectors in `R^{n+1}`; tangent vectors at a
//! sphere point are ambient vectors orthogonal to it.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{self, dot, norm};
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Curvature {
    Flat,
    Spherical,
}

impl Curvature {
    pub fn from_kappa(kappa: i64) -> Result<Self> {
        match kappa {
            0 => Ok(Curvature::Flat),
            1 => Ok(Curvature::Spherical),
            k => Err(invalid(format!("kappa must be 0 or 1, got {k}"))),
        }
    }

    pub fn kappa(self) -> u8 {
        match self {
            Curvature::Flat => 0,
            Curvature::Spherical => 1,
        }
    }
}

/// Model space `M^n_κ` with κ ∈ {0, 1} and `n ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceForm {
    curvature: Curvature,
    dim: usize,
}

/// A point of a [`SpaceForm`], in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Point<T> {
    /// Wraps coordinates without validation; use [`SpaceForm::point`] for
    /// checked construction.
    pub fn new_unchecked(coords: Vec<T>) -> Self {
        Point { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn cast<U: Scalar>(&self) -> Point<U> {
        Point {
            coords: self.coords.iter().map(|&x| U::lit(x.as_f64())).collect(),
        }
    }
}

impl SpaceForm {
    pub fn new(curvature: Curvature, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(invalid(format!("dimension must be at least 2, got {dim}")));
        }
        Ok(SpaceForm { curvature, dim })
    }

    pub fn flat(dim: usize) -> Result<Self> {
        Self::new(Curvature::Flat, dim)
    }

    pub fn spherical(dim: usize) -> Result<Self> {
        Self::new(Curvature::Spherical, dim)
    }

    pub fn curvature(&self) -> Curvature {
        self.curvature
    }

    pub fn kappa(&self) -> u8 {
        self.curvature.kappa()
    }

    pub fn is_flat(&self) -> bool {
        self.curvature == Curvature::Flat
    }

    /// Intrinsic dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of a coordinate vector: `n` when flat, `n + 1` on the sphere.
    pub fn ambient_dim(&self) -> usize {
        match self.curvature {
            Curvature::Flat => self.dim,
            Curvature::Spherical => self.dim + 1,
        }
    }

    /// Checked point construction. Sphere points must have unit norm to 1e-12.
    pub fn point<T: Scalar>(&self, coords: Vec<T>) -> Result<Point<T>> {
        self.check_len(coords.len())?;
        if self.curvature == Curvature::Spherical {
            let n = norm(&coords);
            if (n - T::one()).abs() > T::tol(1e-12) {
                return Err(Error::NotOnSphere { norm: n.as_f64() });
            }
        }
        Ok(Point { coords })
    }

    /// Builds a point, rescaling onto the sphere when κ = 1.
    pub fn project<T: Scalar>(&self, coords: Vec<T>) -> Result<Point<T>> {
        self.check_len(coords.len())?;
        match self.curvature {
            Curvature::Flat => Ok(Point { coords }),
            Curvature::Spherical => linalg::normalized(&coords, T::epsilon())
                .map(|coords| Point { coords })
                .ok_or_else(|| invalid("cannot project the zero vector onto the sphere")),
        }
    }

    /// The origin of `R^n`, or the north pole `e_{n+1}` of `S^n`.
    pub fn origin<T: Scalar>(&self) -> Point<T> {
        let mut coords = vec![T::zero(); self.ambient_dim()];
        if self.curvature == Curvature::Spherical {
            coords[self.dim] = T::one();
        }
        Point { coords }
    }

    fn check_len(&self, found: usize) -> Result<()> {
        let expected = self.ambient_dim();
        if found != expected {
            return Err(Error::DimensionMismatch { expected, found });
        }
        Ok(())
    }

    /// Geodesic distance `|p, q|`; in `[0, π]` on the sphere.
    pub fn distance<T: Scalar>(&self, p: &Point<T>, q: &Point<T>) -> Result<T> {
        self.check_len(p.coords.len())?;
        self.check_len(q.coords.len())?;
        Ok(self.dist(&p.coords, &q.coords))
    }

    /// Unchecked distance on raw coordinates.
    ///
    /// On the sphere this is `2·atan2(|p − q|, |p + q|)`, which agrees with
    /// `arccos(clamp(<p, q>))` but keeps full precision near 0 and π.
    #[inline]
    pub fn dist<T: Scalar>(&self, p: &[T], q: &[T]) -> T {
        match self.curvature {
            Curvature::Flat => linalg::dist(p, q),
            Curvature::Spherical => {
                let (mut dm, mut dp) = (T::zero(), T::zero());
                for (&a, &b) in p.iter().zip(q) {
                    dm += (a - b) * (a - b);
                    dp += (a + b) * (a + b);
                }
                T::two() * dm.sqrt().atan2(dp.sqrt())
            }
        }
    }

    /// Point at arc length `t ≥ 0` along the unit-speed geodesic leaving `p`
    /// in direction `dir`.
    pub fn geodesic_point<T: Scalar>(&self, p: &Point<T>, dir: &[T], t: T) -> Result<Point<T>> {
        self.check_len(p.coords.len())?;
        self.check_len(dir.len())?;
        let n = norm(dir);
        if (n - T::one()).abs() > T::tol(1e-9) {
            return Err(Error::NonUnitDirection { norm: n.as_f64() });
        }
        if self.curvature == Curvature::Spherical {
            let d = dot(&p.coords, dir);
            if d.abs() > T::tol(1e-9) {
                return Err(Error::NotTangent { dot: d.as_f64() });
            }
        }
        if t < T::zero() {
            return Err(invalid("geodesic parameter must be nonnegative"));
        }
        Ok(Point {
            coords: self.exp(&p.coords, dir, t),
        })
    }

    /// Unchecked exponential map along a unit tangent.
    #[inline]
    pub fn exp<T: Scalar>(&self, p: &[T], dir: &[T], t: T) -> Vec<T> {
        match self.curvature {
            Curvature::Flat => linalg::axpy(p, t, dir),
            Curvature::Spherical => {
                let (c, s) = (t.cos(), t.sin());
                p.iter().zip(dir).map(|(&a, &v)| c * a + s * v).collect()
            }
        }
    }

    /// Unit tangent at `p` pointing along the geodesic to `q`, or `None` when
    /// the points coincide (or are antipodal on the sphere).
    pub fn direction<T: Scalar>(&self, p: &[T], q: &[T]) -> Option<Vec<T>> {
        let thresh = T::tol(1e-14);
        match self.curvature {
            Curvature::Flat => linalg::normalized(&linalg::sub(q, p), thresh),
            Curvature::Spherical => {
                if dot(p, q) < T::zero() && linalg::dist(p, &linalg::scale(q, -T::one())) < thresh
                {
                    return None;
                }
                linalg::normalized(&linalg::reject(q, p), thresh)
            }
        }
    }

    /// Projects an ambient vector onto the tangent space at `p`.
    pub fn to_tangent<T: Scalar>(&self, p: &[T], v: &[T]) -> Vec<T> {
        match self.curvature {
            Curvature::Flat => v.to_vec(),
            Curvature::Spherical => linalg::reject(v, p),
        }
    }

    /// Modified distance function `md_κ(t) = ∫₀ᵗ sin(√κ s)/√κ ds`:
    /// `t²/2` when flat, `1 − cos t` on the unit sphere.
    pub fn md<T: Scalar>(&self, t: T) -> T {
        match self.curvature {
            Curvature::Flat => t * t * T::half(),
            // 2 sin²(t/2) avoids cancellation for small t
            Curvature::Spherical => {
                let s = (t * T::half()).sin();
                T::two() * s * s
            }
        }
    }

    /// Derivative `md_κ'(t)`: `t` when flat, `sin t` on the sphere.
    pub fn md_derivative<T: Scalar>(&self, t: T) -> T {
        match self.curvature {
            Curvature::Flat => t,
            Curvature::Spherical => t.sin(),
        }
    }

    /// Radius of a circle of geodesic curvature `a` in the model plane:
    /// `1/A` when flat, `arccot A` on the sphere.
    pub fn model_radius<T: Scalar>(&self, curvature_bound: T) -> Result<T> {
        let a = curvature_bound;
        if !(a >= T::zero()) {
            return Err(invalid(format!("curvature bound must be >= 0, got {a}")));
        }
        match self.curvature {
            Curvature::Flat if a == T::zero() => Err(Error::UnboundedModelRadius),
            Curvature::Flat => Ok(a.recip()),
            Curvature::Spherical => Ok(T::one().atan2(a)),
        }
    }

    /// `(n−1)`-volume of the unit sphere `S^{n−1} ⊂ R^n`, the round boundary of
    /// the unit ball in this space form's dimension.
    pub fn unit_sphere_volume<T: Scalar>(&self) -> T {
        sphere_volume(self.dim - 1)
    }
}

/// Volume of the unit `k`-sphere `S^k ⊂ R^{k+1}`.
pub fn sphere_volume<T: Scalar>(k: usize) -> T {
    // |S^0| = 2, |S^1| = 2π, |S^k| = 2π/(k−1) |S^{k−2}|
    let tau = T::PI() * T::two();
    let mut v = if k % 2 == 0 { T::two() } else { tau };
    let mut j = if k % 2 == 0 { 2 } else { 3 };
    while j <= k {
        v = v * tau / T::lit((j - 1) as f64);
        j += 2;
    }
    v
}

/// `md_κ` for arbitrary real κ: `(1 − cos(√κ t))/κ`, `t²/2` at κ = 0, and
/// `(cosh(√−κ t) − 1)/(−κ)` for κ < 0.
pub fn md_general<T: Scalar>(kappa: T, t: T) -> T {
    if kappa == T::zero() {
        t * t * T::half()
    } else if kappa > T::zero() {
        let s = (kappa.sqrt() * t * T::half()).sin();
        T::two() * s * s / kappa
    } else {
        let s = ((-kappa).sqrt() * t * T::half()).sinh();
        T::two() * s * s / (-kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn sphere2() -> SpaceForm {
        SpaceForm::spherical(2).unwrap()
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(SpaceForm::flat(1).is_err());
        assert!(Curvature::from_kappa(-1).is_err());
        assert!(matches!(
            sphere2().point(vec![1.0, 1.0, 0.0]),
            Err(Error::NotOnSphere { .. })
        ));
        assert!(matches!(
            SpaceForm::flat(3).unwrap().point(vec![1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn distance_examples() {
        let flat = SpaceForm::flat(3).unwrap();
        let p = flat.point(vec![0.3, -1.0, 2.0]).unwrap();
        assert_eq!(flat.distance(&p, &p).unwrap(), 0.0);

        let sf = sphere2();
        let north = sf.point(vec![0.0, 0.0, 1.0]).unwrap();
        let south = sf.point(vec![0.0, 0.0, -1.0]).unwrap();
        assert!((sf.distance(&north, &south).unwrap() - PI).abs() < 1e-15);
        let east = sf.point(vec![1.0, 0.0, 0.0]).unwrap();
        assert!((sf.distance(&north, &east).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_distance_matches_great_circle_sampling() {
        // Oracle: polyline length of a densely sampled great circle arc.
        let sf = sphere2();
        let p = [0.0, 0.6, 0.8];
        let q = [1.0, 0.0, 0.0];
        let steps = 200_000;
        let mut len = 0.0;
        let mut prev = p.to_vec();
        for i in 1..=steps {
            let t = FRAC_PI_2 * i as f64 / steps as f64;
            let x: Vec<f64> = (0..3).map(|k| t.cos() * p[k] + t.sin() * q[k]).collect();
            len += linalg::dist(&prev, &x);
            prev = x;
        }
        assert!((len - FRAC_PI_2).abs() < 1e-9);
        assert!((sf.dist(&p, &q) - len).abs() < 1e-9);
    }

    #[test]
    fn geodesic_point_examples() {
        let flat = SpaceForm::flat(3).unwrap();
        let o = flat.origin::<f64>();
        let e1 = [1.0, 0.0, 0.0];
        assert_eq!(flat.geodesic_point(&o, &e1, 0.0).unwrap(), o);
        assert_eq!(
            flat.geodesic_point(&o, &e1, 1.0).unwrap().coords(),
            &[1.0, 0.0, 0.0]
        );

        // Rotation by π/2 in the (e3, dir) plane maps the pole to dir.
        let sf = sphere2();
        let north = sf.origin::<f64>();
        let dir = [0.6, 0.8, 0.0];
        let x = sf.geodesic_point(&north, &dir, FRAC_PI_2).unwrap();
        let rot = [[0.0, 0.0, 0.6], [0.0, 0.0, 0.8], [-0.6, -0.8, 0.0]];
        for (k, row) in rot.iter().enumerate() {
            assert!((x.coords()[k] - dot(row, north.coords())).abs() < 1e-15);
        }
    }

    #[test]
    fn geodesic_point_validates_direction() {
        let sf = sphere2();
        let north = sf.origin::<f64>();
        assert!(matches!(
            sf.geodesic_point(&north, &[2.0, 0.0, 0.0], 1.0),
            Err(Error::NonUnitDirection { .. })
        ));
        assert!(matches!(
            sf.geodesic_point(&north, &[0.0, 0.0, 1.0], 1.0),
            Err(Error::NotTangent { .. })
        ));
    }

    #[test]
    fn md_examples() {
        let flat = SpaceForm::flat(2).unwrap();
        let sf = sphere2();
        assert!((sf.md(FRAC_PI_2) - 1.0).abs() < 1e-15);
        assert_eq!(flat.md(2.0), 2.0);
        assert_eq!(flat.md(0.0), 0.0);
        assert_eq!(sf.md(0.0), 0.0);
        assert!((md_general(1.0f64, 0.7) - sf.md(0.7)).abs() < 1e-15);
        assert!((md_general(4.0, 0.7) - (1.0 - (1.4f64).cos()) / 4.0).abs() < 1e-15);
        assert!((md_general(-1.0, 0.7) - ((0.7f64).cosh() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn model_radius_examples() {
        let flat = SpaceForm::flat(2).unwrap();
        let sf = sphere2();
        assert_eq!(flat.model_radius(2.0).unwrap(), 0.5);
        assert!(matches!(
            flat.model_radius(0.0),
            Err(Error::UnboundedModelRadius)
        ));
        assert_eq!(sf.model_radius(0.0).unwrap(), FRAC_PI_2);
        assert!((sf.model_radius(1.0).unwrap() - FRAC_PI_4).abs() < 1e-16);
        assert!(sf.model_radius(-1.0).is_err());
    }

    #[test]
    fn sphere_volumes() {
        assert!((sphere_volume::<f64>(1) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_volume::<f64>(2) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_volume::<f64>(3) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_volume::<f64>(4) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn single_precision_kernel() {
        let sf = SpaceForm::spherical(2).unwrap();
        let p = sf.point(vec![1.0f32, 0.0, 0.0]).unwrap();
        let q = sf.point(vec![0.0f32, 1.0, 0.0]).unwrap();
        assert!((sf.distance(&p, &q).unwrap() - std::f32::consts::FRAC_PI_2).abs() < 1e-6);
    }
}
