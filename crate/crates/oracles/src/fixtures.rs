//! Seeded random instances shared by the test suites.

use normplane::rng::Lcg64;
use normplane::{AffineMap, Harmonic, Mat2, UnitBall, Vec2};

/// Ellipse ball with random orientation and semi-axes in `[0.5, 2]`.
pub fn random_ellipse(rng: &mut Lcg64) -> UnitBall {
    let phi = rng.uniform(0.0, std::f64::consts::PI);
    let (a, b) = (rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0));
    let r = Mat2::rotation(phi);
    let q = r.mul(&Mat2::diag(1.0 / (a * a), 1.0 / (b * b))).mul(&r.transpose());
    UnitBall::ellipse(q.m[0][0], 0.5 * (q.m[0][1] + q.m[1][0]), q.m[1][1]).unwrap()
}

/// Exponent in `[1.5, 4]`; larger exponents make the boundary numerically
/// flat near the axes.
pub fn random_lp(rng: &mut Lcg64) -> UnitBall {
    UnitBall::lp(rng.uniform(1.5, 4.0)).unwrap()
}

/// Radial Fourier ball with small `k = 2, 4` harmonics.
pub fn random_fourier(rng: &mut Lcg64) -> UnitBall {
    loop {
        let harmonics = vec![
            Harmonic {
                k: 2,
                a: rng.uniform(-0.06, 0.06),
                b: rng.uniform(-0.06, 0.06),
            },
            Harmonic {
                k: 4,
                a: rng.uniform(-0.01, 0.01),
                b: rng.uniform(-0.01, 0.01),
            },
        ];
        if let Ok(m) = UnitBall::radial_fourier(1.0, harmonics) {
            return m;
        }
    }
}

/// One of the three variants, cycling with `i`.
pub fn random_ball(rng: &mut Lcg64, i: usize) -> UnitBall {
    match i % 3 {
        0 => random_ellipse(rng),
        1 => random_lp(rng),
        _ => random_fourier(rng),
    }
}

/// Affine map with singular values in a moderate range.
pub fn random_affine(rng: &mut Lcg64) -> AffineMap {
    loop {
        let lin = Mat2 {
            m: [
                [rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)],
                [rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)],
            ],
        };
        if lin.det().abs() > 0.5 {
            let shift = Vec2::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            return AffineMap::new(lin, shift).unwrap();
        }
    }
}

/// Like [`random_ball`] but with twice-differentiable gauges only (`p >= 2`
/// for Lp). Finite-difference residuals at a fixed step lose accuracy near
/// the axes when `p < 2`, where the second derivative is unbounded.
pub fn random_smooth_ball(rng: &mut Lcg64, i: usize) -> UnitBall {
    match i % 3 {
        1 => UnitBall::lp(rng.uniform(2.0, 4.0)).unwrap(),
        _ => random_ball(rng, i),
    }
}
