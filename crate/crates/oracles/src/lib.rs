//! Brute-force reference computations for tests.
//!
//! Everything here works by dense enumeration followed by nested grid
//! refinement, and uses only the gauge of a ball. None of it shares code with
//! the solvers it is compared against (golden-section search, tangent-line
//! constructions, analytic boundary tangents).

use normplane::{Ray, UnitBall, Vec2};

pub mod fixtures;

/// Minimizes `f` on `[lo, hi]` by a uniform grid of `n` cells, then repeatedly
/// regrids the two cells around the best node with `refine` cells until the
/// spacing drops below `xtol`. Returns `(arg, value)`.
pub fn grid_minimize<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n: usize,
    refine: usize,
    xtol: f64,
) -> (f64, f64) {
    let (mut a, mut b, mut cells) = (lo, hi, n);
    let mut best = (lo, f(lo));
    loop {
        let h = (b - a) / cells as f64;
        for i in 0..=cells {
            let x = a + h * i as f64;
            let fx = f(x);
            if fx < best.1 {
                best = (x, fx);
            }
        }
        if h < xtol || h == 0.0 {
            return best;
        }
        a = (best.0 - h).max(lo);
        b = (best.0 + h).min(hi);
        cells = refine;
    }
}

/// Locates the sign changes of `f` on a uniform grid and narrows each one by
/// nested regridding to width `xtol`.
pub fn grid_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, xtol: f64) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    let vals: Vec<f64> = (0..=n).map(|i| f(lo + h * i as f64)).collect();
    let mut roots = Vec::new();
    for i in 0..n {
        if vals[i] == 0.0 {
            roots.push(lo + h * i as f64);
            continue;
        }
        if (vals[i] < 0.0) != (vals[i + 1] < 0.0) && vals[i + 1] != 0.0 {
            let (mut a, mut b) = (lo + h * i as f64, lo + h * (i + 1) as f64);
            let mut fa = vals[i];
            while b - a > xtol {
                let k = 16;
                let hh = (b - a) / k as f64;
                let mut moved = false;
                for j in 1..=k {
                    let x = a + hh * j as f64;
                    let fx = if j == k { f(b) } else { f(x) };
                    if (fx < 0.0) != (fa < 0.0) || fx == 0.0 {
                        b = x;
                        a = x - hh;
                        fa = f(a);
                        moved = true;
                        break;
                    }
                }
                if !moved || hh == 0.0 {
                    break;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots
}

/// Normed distance from `p` to the ray: grid on `s` with spacing about
/// `step`, then local refinement. The minimizer satisfies
/// `s <= 2 |p - apex|_M / |dir|_M`, which bounds the grid.
pub fn dist_point_ray(m: &UnitBall, p: Vec2, ray: &Ray, step: f64) -> (f64, f64) {
    let off = p - ray.apex;
    let s_max = 2.0 * m.gauge(off) / m.gauge(ray.dir);
    if s_max == 0.0 {
        return (0.0, 0.0);
    }
    let n = ((s_max / step).ceil() as usize).clamp(16, 200_000);
    let (s, d) = grid_minimize(|s| m.gauge(off - ray.dir * s), 0.0, s_max, n, 40, 1e-13);
    (d, s)
}

/// Unit direction at angle `phi` from `u`, turning toward `v`.
fn sector_dir(u: Vec2, v: Vec2, phi: f64) -> Vec2 {
    let sign = u.cross(v).signum();
    let (s, c) = (sign * phi).sin_cos();
    Vec2::new(c * u.x - s * u.y, s * u.x + c * u.y)
}

fn opening(u: Vec2, v: Vec2) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

/// Glogovskij bisector direction from a sign scan of the distance
/// difference, with both distances taken from [`dist_point_ray`].
pub fn glogovskij_dir(m: &UnitBall, apex: Vec2, u: Vec2, v: Vec2, dist_step: f64) -> Option<Vec2> {
    let (ru, rv) = (Ray { apex, dir: u }, Ray { apex, dir: v });
    let g = |phi: f64| {
        let z = apex + sector_dir(u, v, phi);
        dist_point_ray(m, z, &ru, dist_step).0 - dist_point_ray(m, z, &rv, dist_step).0
    };
    let alpha = opening(u, v);
    let roots = grid_roots(g, 1e-9, alpha - 1e-9, 64, 1e-10);
    (roots.len() == 1).then(|| sector_dir(u, v, roots[0]))
}

/// Internal billiard bisector from the least-action principle alone: the
/// direction `w` in the sector along which
/// `z -> |z - (apex + u)| + |z - (apex - v)|` is stationary at the apex,
/// with the derivative taken by a central difference.
pub fn billiard_bisector_dir(m: &UnitBall, apex: Vec2, u: Vec2, v: Vec2) -> Option<Vec2> {
    let (b, c) = (apex + u, apex - v);
    let h = 1e-7;
    let deriv = |phi: f64| {
        let w = sector_dir(u, v, phi);
        let f = |z: Vec2| m.gauge(z - b) + m.gauge(z - c);
        (f(apex + w * h) - f(apex - w * h)) / (2.0 * h)
    };
    let alpha = opening(u, v);
    let roots = grid_roots(deriv, 1e-9, alpha - 1e-9, 512, 1e-11);
    (roots.len() == 1).then(|| sector_dir(u, v, roots[0]))
}

/// Boundary point of `center + scale * M` in direction `theta`, from the
/// gauge only.
pub fn boundary_point(m: &UnitBall, center: Vec2, scale: f64, theta: f64) -> Vec2 {
    let u = Vec2::from_angle(theta);
    center + u * (scale / m.gauge(u))
}

/// Tangent points from exterior `p`: the boundary points extremizing the
/// angle under which they are seen from `p`. Returns the two boundary angles.
pub fn tangent_thetas(m: &UnitBall, center: Vec2, scale: f64, p: Vec2) -> (f64, f64) {
    let axis = center - p;
    let seen = |theta: f64| {
        let d = boundary_point(m, center, scale, theta) - p;
        axis.cross(d).atan2(axis.dot(d))
    };
    let tau = std::f64::consts::TAU;
    let (t_max, _) = grid_minimize(|t| -seen(t), 0.0, tau, 20_000, 40, 1e-14);
    let (t_min, _) = grid_minimize(seen, 0.0, tau, 20_000, 40, 1e-14);
    let (a, b) = (t_max.rem_euclid(tau), t_min.rem_euclid(tau));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Gauge-nearest point of line `bc` to `a`, by grid search on the side
/// parameter over `[lo, hi]`.
pub fn foot_param(m: &UnitBall, a: Vec2, b: Vec2, c: Vec2, lo: f64, hi: f64) -> f64 {
    grid_minimize(|s| m.gauge(a - b - (c - b) * s), lo, hi, 20_000, 40, 1e-14).0
}

/// Euclidean orthogonal projection parameter of `a` onto line `bc`.
pub fn euclid_foot_param(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (a - b).dot(c - b) / (c - b).norm_sq()
}

/// Euclidean tangent length from `p` to the circle of radius `rho` at `z`.
pub fn euclid_tangent_len(p: Vec2, z: Vec2, rho: f64) -> f64 {
    ((p - z).norm_sq() - rho * rho).sqrt()
}
