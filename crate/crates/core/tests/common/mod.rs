//! Independent planar oracles. Nothing here calls the solver; distances,
//! vertices and maximizers are recomputed from scratch.

#![allow(dead_code)]

use radbound::{Ball, Body, Point, SpaceForm};

/// `(cx, cy, r)`.
pub type Disk = (f64, f64, f64);

pub fn body_from_disks(disks: &[Disk]) -> radbound::Result<Body<f64>> {
    let sf = SpaceForm::flat(2)?;
    Body::new(
        sf,
        disks
            .iter()
            .map(|&(x, y, r)| Ball::new(Point::new_unchecked(vec![x, y]), r))
            .collect(),
    )
}

pub fn rho(disks: &[Disk], x: f64, y: f64) -> f64 {
    disks
        .iter()
        .map(|&(cx, cy, r)| r - (x - cx).hypot(y - cy))
        .fold(f64::INFINITY, f64::min)
}

/// Maximizer of a unimodal function on `[lo, hi]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Maximizer of a concave function of two variables: grid at `step` over
/// the box, then nested golden section in a window of two grid cells.
pub fn grid_golden_max(f: impl Fn(f64, f64) -> f64, box_: [f64; 4], step: f64) -> (f64, f64, f64) {
    let [x0, x1, y0, y1] = box_;
    let nx = ((x1 - x0) / step).ceil() as usize;
    let ny = ((y1 - y0) / step).ceil() as usize;
    let mut best = (f64::NEG_INFINITY, x0, y0);
    for i in 0..=nx {
        let x = x0 + i as f64 * step;
        for j in 0..=ny {
            let y = y0 + j as f64 * step;
            let v = f(x, y);
            if v > best.0 {
                best = (v, x, y);
            }
        }
    }
    let (_, mut bx, mut by) = best;
    let w = 2.0 * step;
    // Flat ridges can put the grid winner several cells from the maximizer;
    // re-centre until the refined point is interior to the window.
    for _ in 0..200 {
        let inner = |x: f64| golden_max(|y| f(x, y), by - w, by + w, 80);
        let (x, _) = golden_max(|x| inner(x).1, bx - w, bx + w, 80);
        let (y, v) = inner(x);
        let moved = (x - bx).abs().max((y - by).abs());
        if moved < 0.9 * w {
            return (v, x, y);
        }
        bx = x;
        by = y;
    }
    panic!("grid oracle did not settle");
}

fn bbox(disks: &[Disk]) -> [f64; 4] {
    let &(cx, cy, r) = disks
        .iter()
        .min_by(|a, b| a.2.partial_cmp(&b.2).unwrap())
        .unwrap();
    [cx - r, cx + r, cy - r, cy + r]
}

/// `(a, soul_x, soul_y)` by exhaustive grid at resolution `1e-3` plus
/// golden refinement.
pub fn inner_radius(disks: &[Disk]) -> (f64, f64, f64) {
    grid_golden_max(|x, y| rho(disks, x, y), bbox(disks), 1e-3)
}

/// Points of `∂X` that can be farthest from some point: pairwise circle
/// intersections inside every disk.
pub fn vertices(disks: &[Disk]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let (x0, y0, r0) = disks[i];
            let (x1, y1, r1) = disks[j];
            let d = (x1 - x0).hypot(y1 - y0);
            if d < 1e-12 || d > r0 + r1 || d < (r0 - r1).abs() {
                continue;
            }
            let l = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d);
            let h = (r0 * r0 - l * l).max(0.0).sqrt();
            let (ux, uy) = ((x1 - x0) / d, (y1 - y0) / d);
            let (mx, my) = (x0 + l * ux, y0 + l * uy);
            for s in [-1.0, 1.0] {
                let p = (mx - s * h * uy, my + s * h * ux);
                if rho(disks, p.0, p.1) >= -1e-9 {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `sup_{x ∈ X} |p − x|`. On an arc the distance to `p` has its only
/// interior maximum at the antipode of `p`, so vertices and surviving
/// antipodes suffice.
pub fn farthest(disks: &[Disk], px: f64, py: f64) -> f64 {
    let mut best: f64 = 0.0;
    for (vx, vy) in vertices(disks) {
        best = best.max((vx - px).hypot(vy - py));
    }
    for &(cx, cy, r) in disks {
        let d = (cx - px).hypot(cy - py);
        if d > 1e-12 {
            let q = (cx + r * (cx - px) / d, cy + r * (cy - py) / d);
            if rho(disks, q.0, q.1) >= -1e-12 {
                best = best.max((q.0 - px).hypot(q.1 - py));
            }
        }
        if d <= 1e-9 {
            // Every point of this circle is equally far; any surviving one will do.
            for k in 0..4096 {
                let t = k as f64 * std::f64::consts::TAU / 4096.0;
                let q = (cx + r * t.cos(), cy + r * t.sin());
                if rho(disks, q.0, q.1) >= -1e-12 {
                    best = best.max((q.0 - px).hypot(q.1 - py));
                }
            }
        }
    }
    best
}

/// `Rad(X) = min_p sup_x |p − x|`: grid at `1e-2` then golden refinement
/// of the convex objective.
pub fn global_radius(disks: &[Disk]) -> f64 {
    let (v, _, _) = grid_golden_max(|x, y| -farthest(disks, x, y), bbox(disks), 1e-2);
    -v
}

/// Simple seeded planar disk families.
pub fn random_disks(seed: u64, count: usize, r: (f64, f64)) -> Vec<Disk> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rad = rng.random_range(r.0..=r.1);
            let off = 0.9 * rad * rng.random::<f64>().sqrt();
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            (off * t.cos(), off * t.sin(), rad)
        })
        .collect()
}
