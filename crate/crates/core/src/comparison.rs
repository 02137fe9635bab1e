//! ODE comparison for `f'' + κf ≥ 1`.
//!
//! The comparison function `f̃` solving `f̃'' + κf̃ = 1` with matched initial
//! data is always evaluated in closed form. A classical RK4 integrator is
//! provided to manufacture sampled profiles with a prescribed forcing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaceform::Curvature;
use crate::Scalar;

/// Closed-form solution of `f̃'' + κ f̃ = 1` with `f̃(0) = f0`, `f̃'(0) = df0`:
/// `f0 + df0·t + t²/2` when flat, `1 + (f0 − 1) cos t + df0 sin t` on the sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonSolution<T> {
    pub curvature: Curvature,
    pub f0: T,
    pub df0: T,
}

impl<T: Scalar> ComparisonSolution<T> {
    pub fn eval(&self, t: T) -> T {
        match self.curvature {
            Curvature::Flat => self.f0 + self.df0 * t + t * t * T::half(),
            // 1 + (f0 − 1) cos t + df0 sin t, exact at t = 0.
            Curvature::Spherical => {
                let s = (t * T::half()).sin();
                self.f0 + (T::one() - self.f0) * T::two() * s * s + self.df0 * t.sin()
            }
        }
    }

    pub fn derivative(&self, t: T) -> T {
        match self.curvature {
            Curvature::Flat => self.df0 + t,
            Curvature::Spherical => -(self.f0 - T::one()) * t.sin() + self.df0 * t.cos(),
        }
    }

    pub fn second_derivative(&self, t: T) -> T {
        match self.curvature {
            Curvature::Flat => T::one(),
            Curvature::Spherical => -(self.f0 - T::one()) * t.cos() - self.df0 * t.sin(),
        }
    }

    /// `f̃'' + κ f̃ − 1`, zero up to rounding.
    pub fn ode_residual(&self, t: T) -> T {
        let kappa = T::lit(self.curvature.kappa() as f64);
        self.second_derivative(t) + kappa * self.eval(t) - T::one()
    }
}

pub fn comparison_solution<T: Scalar>(curvature: Curvature, f0: T, df0: T) -> ComparisonSolution<T> {
    ComparisonSolution { curvature, f0, df0 }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum FirstZero<T> {
    /// First `t > 0` with `f̃(t) = 1`.
    At(T),
    /// `f̃ ≡ 1`; no isolated zero exists.
    Degenerate,
}

/// First positive zero of `1 − f̃` on the unit sphere.
///
/// `1 − f̃(t) = (1 − f0) cos t − df0 sin t`, whose first positive zero is
/// `atan2(1 − f0, df0)` whenever `f0 < 1`.
pub fn first_zero<T: Scalar>(f0: T, df0: T) -> Result<FirstZero<T>> {
    let u = T::one() - f0;
    if u > T::zero() {
        Ok(FirstZero::At(u.atan2(df0)))
    } else if u == T::zero() && df0 == T::zero() {
        Ok(FirstZero::Degenerate)
    } else {
        Err(Error::Inadmissible(format!("first zero needs f0 < 1, got {f0}")))
    }
}

/// Sampled `f` with its initial data and the matching comparison function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonProfile<T> {
    pub kappa: u8,
    pub f0: T,
    pub df0: T,
    pub samples: Vec<(T, T)>,
    /// Checking horizon: the first zero of `1/κ − f̃`, or the last sample.
    pub t0: T,
    pub t0_degenerate: bool,
    /// `f(t) − f̃(t)` at each sample.
    pub residuals: Vec<T>,
}

impl<T: Scalar> ComparisonProfile<T> {
    /// Builds the profile. Samples must have strictly increasing `t`
    /// starting at 0; on the sphere `0 ≤ f0 < 1` is required.
    pub fn new(curvature: Curvature, f0: T, df0: T, samples: Vec<(T, T)>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::Inadmissible("profile needs at least 3 samples".into()));
        }
        if samples[0].0 != T::zero() || samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::Inadmissible(
                "sample times must start at 0 and increase".into(),
            ));
        }
        let horizon = samples.last().unwrap().0;
        let (t0, t0_degenerate) = match curvature {
            Curvature::Flat => (horizon, false),
            Curvature::Spherical => {
                if !(f0 >= T::zero() && f0 < T::one()) {
                    return Err(Error::Inadmissible(format!("need 0 <= f(0) < 1, got {f0}")));
                }
                match first_zero(f0, df0)? {
                    FirstZero::At(t) => (t, false),
                    FirstZero::Degenerate => (horizon, true),
                }
            }
        };
        let sol = comparison_solution(curvature, f0, df0);
        let residuals = samples.iter().map(|&(t, f)| f - sol.eval(t)).collect();
        Ok(ComparisonProfile {
            kappa: curvature.kappa(),
            f0,
            df0,
            samples,
            t0,
            t0_degenerate,
            residuals,
        })
    }

    pub fn curvature(&self) -> Curvature {
        if self.kappa == 0 {
            Curvature::Flat
        } else {
            Curvature::Spherical
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComparisonOutcome<T> {
    pub pass: bool,
    pub worst_residual: T,
    pub worst_t: T,
    pub t0: T,
    /// Number of samples in `[0, t0]`.
    pub checked: usize,
}

/// Residual floor for a passing comparison.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Checks `f ≥ f̃` on `[0, t0]` after verifying the sampled hypothesis
/// `f'' + κf ≥ 1` with centered second differences, allowing
/// `1e-9 + 10·h²` of discretization slack plus the rounding bound
/// `64·ε·(1 + |f|)/h²` of a second difference.
pub fn ode_compare<T: Scalar>(profile: &ComparisonProfile<T>) -> Result<ComparisonOutcome<T>> {
    let kappa = T::lit(profile.kappa as f64);
    let s = &profile.samples;
    for w in s.windows(3) {
        let (t0, f0) = w[0];
        let (t1, f1) = w[1];
        let (t2, f2) = w[2];
        let (hl, hr) = (t1 - t0, t2 - t1);
        let second = T::two() * (hl * f2 - (hl + hr) * f1 + hr * f0) / (hl * hr * (hl + hr));
        let h = hl.max(hr);
        let rounding = T::lit(64.0) * T::epsilon() * (T::one() + f1.abs()) / (hl * hr);
        let slack = T::lit(1e-9) + T::lit(10.0) * h * h + rounding;
        let lhs = second + kappa * f1;
        if lhs < T::one() - slack {
            return Err(Error::HypothesisNotMet(format!(
                "f'' + κf = {lhs} < 1 at t = {t1}"
            )));
        }
    }
    let mut worst = (T::infinity(), T::zero());
    let mut checked = 0;
    for (&(t, _), &r) in s.iter().zip(&profile.residuals) {
        if t > profile.t0 {
            break;
        }
        checked += 1;
        if r < worst.0 {
            worst = (r, t);
        }
    }
    Ok(ComparisonOutcome {
        pass: worst.0 >= -T::lit(RESIDUAL_TOL),
        worst_residual: worst.0,
        worst_t: worst.1,
        t0: profile.t0,
        checked,
    })
}

/// Right-hand side `g(t)` of `f'' + κf = g(t)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Forcing<T> {
    /// `Σ c_k t^k`.
    Polynomial(Vec<T>),
    /// Linear interpolation between `(t, value)` knots, constant beyond.
    PiecewiseLinear(Vec<(T, T)>),
}

impl<T: Scalar> Forcing<T> {
    pub fn constant(c: T) -> Self {
        Forcing::Polynomial(vec![c])
    }

    pub fn eval(&self, t: T) -> T {
        match self {
            Forcing::Polynomial(c) => c.iter().rev().fold(T::zero(), |acc, &k| acc * t + k),
            Forcing::PiecewiseLinear(knots) => {
                let Some(first) = knots.first() else {
                    return T::zero();
                };
                if t <= first.0 {
                    return first.1;
                }
                for w in knots.windows(2) {
                    let ((ta, va), (tb, vb)) = (w[0], w[1]);
                    if t <= tb {
                        let s = (t - ta) / (tb - ta);
                        return va + s * (vb - va);
                    }
                }
                knots.last().unwrap().1
            }
        }
    }
}

/// Integrates `f'' = g(t) − κf` with classical RK4 on `steps` uniform steps
/// over `[0, horizon]`, returning `steps + 1` samples `(t, f(t))`.
pub fn integrate<T: Scalar>(
    curvature: Curvature,
    f0: T,
    df0: T,
    forcing: &Forcing<T>,
    horizon: T,
    steps: usize,
) -> Vec<(T, T)> {
    let kappa = T::lit(curvature.kappa() as f64);
    let h = horizon / T::lit(steps as f64);
    let rhs = |t: T, y: T| forcing.eval(t) - kappa * y;
    let (mut y, mut v) = (f0, df0);
    let mut out = Vec::with_capacity(steps + 1);
    out.push((T::zero(), y));
    let six = T::lit(6.0);
    for i in 0..steps {
        let t = T::lit(i as f64) * h;
        let hh = h * T::half();
        let (k1y, k1v) = (v, rhs(t, y));
        let (k2y, k2v) = (v + hh * k1v, rhs(t + hh, y + hh * k1y));
        let (k3y, k3v) = (v + hh * k2v, rhs(t + hh, y + hh * k2y));
        let (k4y, k4v) = (v + h * k3v, rhs(t + h, y + h * k3y));
        y += h / six * (k1y + T::two() * k2y + T::two() * k3y + k4y);
        v += h / six * (k1v + T::two() * k2v + T::two() * k3v + k4v);
        out.push((T::lit((i + 1) as f64) * h, y));
    }
    out
}

/// Closed-form upper bound on `b = Rad_s(X)` in terms of the inner radius:
/// `√(2a/A − a²)` when flat, `arccos(A/(A cos a + sin a))` on the sphere.
///
/// Arguments must satisfy `A > 0, 0 < a ≤ 1/A` (flat) or `A ≥ 0,
/// 0 ≤ a ≤ arccot A` (sphere), the upper limit relaxed by `tol`.
pub fn bound_b<T: Scalar>(curvature: Curvature, a: T, curvature_bound: T, tol: T) -> Result<T> {
    let big_a = curvature_bound;
    match curvature {
        Curvature::Flat => {
            if !(big_a > T::zero()) {
                return Err(Error::Inadmissible(format!("flat bound needs A > 0, got {big_a}")));
            }
            if !(a > T::zero() && a <= big_a.recip() + tol) {
                return Err(Error::Inadmissible(format!(
                    "flat bound needs 0 < a <= 1/A = {}, got {a}",
                    big_a.recip()
                )));
            }
            Ok((T::two() * a / big_a - a * a).max(T::zero()).sqrt())
        }
        Curvature::Spherical => {
            if !(big_a >= T::zero()) {
                return Err(Error::Inadmissible(format!("spherical bound needs A >= 0, got {big_a}")));
            }
            let limit = T::one().atan2(big_a);
            if !(a >= T::zero() && a <= limit + tol) {
                return Err(Error::Inadmissible(format!(
                    "spherical bound needs 0 <= a <= arccot A = {limit}, got {a}"
                )));
            }
            if big_a == T::zero() {
                return Ok(T::FRAC_PI_2());
            }
            let ratio = big_a / (big_a * a.cos() + a.sin());
            Ok(ratio.min(T::one()).max(-T::one()).acos())
        }
    }
}
