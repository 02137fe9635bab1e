//! Multi-start projected subgradient ascent on `rho`.
//!
//! Second, independent route to the soul. It makes no use of the active-set
//! structure exploited in [`super::inner`] and is only accurate to roughly
//! `1e-4`; it serves as a cross-check and as a uniqueness probe.

use rand::Rng;

use crate::linalg;
use crate::{Body, Point, Scalar};

#[derive(Clone, Copy, Debug)]
pub struct AscentOptions {
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions {
            restarts: 16,
            iterations: 4000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AscentResult<T> {
    pub value: T,
    pub soul: Point<T>,
    /// Largest distance between the best iterates of different restarts that
    /// reached (to 1e-6) the best value.
    pub spread: T,
}

/// Runs `restarts` subgradient ascents from random points of the smallest
/// ball and polishes each along its last ascent direction by golden section.
pub fn maximize_rho<T: Scalar>(body: &Body<T>, opts: &AscentOptions) -> AscentResult<T> {
    let sf = body.space();
    let (home, home_r) = body
        .balls()
        .iter()
        .min_by(|a, b| a.radius.partial_cmp(&b.radius).unwrap())
        .map(|b| (b.center.coords().to_vec(), b.radius))
        .unwrap();
    let mut finals: Vec<(T, Vec<T>)> = Vec::with_capacity(opts.restarts);
    for restart in 0..opts.restarts.max(1) {
        let mut rng = crate::body::stream(opts.seed, 1000 + restart as u64);
        let start_dir = random_unit(body, &home, &mut rng);
        let frac: f64 = rng.random::<f64>().powf(1.0 / sf.dim() as f64);
        let mut x = sf.exp(&home, &start_dir, home_r * T::lit(frac));
        let mut best = (body.rho_raw(&x), x.clone());
        let step0 = home_r * T::lit(0.5);
        let mut last_dir: Option<Vec<T>> = None;
        for k in 0..opts.iterations {
            let Some(g) = ascent_direction(body, &x) else {
                break;
            };
            let step = step0 / T::lit(((k + 1) as f64).sqrt());
            x = sf.exp(&x, &g, step);
            if !sf.is_flat() {
                x = linalg::normalized(&x, T::epsilon()).unwrap();
            }
            let v = body.rho_raw(&x);
            if v > best.0 {
                best = (v, x.clone());
            }
            last_dir = Some(g);
        }
        if let Some(g) = last_dir.and_then(|_| ascent_direction(body, &best.1)) {
            best = golden_polish(body, &best.1, &g, step0 / T::lit(opts.iterations.max(1) as f64).sqrt());
        }
        finals.push(best);
    }
    let (value, soul) = finals
        .iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .cloned()
        .unwrap();
    let spread = finals
        .iter()
        .filter(|(v, _)| *v >= value - T::lit(1e-6))
        .map(|(_, x)| sf.dist(x, &soul))
        .fold(T::zero(), T::max);
    AscentResult {
        value,
        soul: Point::new_unchecked(soul),
        spread,
    }
}

fn random_unit<T: Scalar, R: Rng>(body: &Body<T>, at: &[T], rng: &mut R) -> Vec<T> {
    loop {
        let g: Vec<T> = (0..at.len())
            .map(|_| T::lit(rng.random::<f64>() * 2.0 - 1.0))
            .collect();
        let g = body.space().to_tangent(at, &g);
        if let Some(u) = linalg::normalized(&g, T::lit(1e-3)) {
            return u;
        }
    }
}

/// Unit supergradient direction of `rho` at `x`: toward the center of the
/// most constraining ball.
fn ascent_direction<T: Scalar>(body: &Body<T>, x: &[T]) -> Option<Vec<T>> {
    let sf = body.space();
    let active = body
        .balls()
        .iter()
        .min_by(|a, b| {
            let da = a.radius - sf.dist(x, a.center.coords());
            let db = b.radius - sf.dist(x, b.center.coords());
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    sf.direction(x, active.center.coords())
}

fn golden_polish<T: Scalar>(body: &Body<T>, x: &[T], dir: &[T], half_width: T) -> (T, Vec<T>) {
    let sf = body.space();
    let back = linalg::scale(dir, -T::one());
    let at = |t: T| {
        if t >= T::zero() {
            sf.exp(x, dir, t)
        } else {
            sf.exp(x, &back, -t)
        }
    };
    let f = |t: T| body.rho_raw(&at(t));
    let inv_phi = T::lit((5f64.sqrt() - 1.0) / 2.0);
    let (mut lo, mut hi) = (-half_width, half_width);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let t = (lo + hi) * T::half();
    let cand = at(t);
    let v = body.rho_raw(&cand);
    let v0 = body.rho_raw(x);
    if v > v0 {
        (v, cand)
    } else {
        (v0, x.to_vec())
    }
}
