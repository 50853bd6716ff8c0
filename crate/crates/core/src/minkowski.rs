//! Unit balls of planar norms and their gauge.
//!
//! Every ball is star-shaped about the origin, so the boundary is
//! parametrized by the Euclidean polar angle: `theta -> r(theta) (cos, sin)`
//! with `r(theta) = 1 / gauge(cos theta, sin theta)`.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{wrap_angle, Line, Mat2, Ray, Vec2};
use crate::scalar;

/// Admissible exponent range for [`UnitBall::Lp`].
pub const LP_RANGE: (f64, f64) = (1.05, 20.0);
/// Number of angles on which radial balls are checked for convexity.
pub const VALIDATION_GRID: usize = 4096;
pub const MIN_RADIUS: f64 = 1e-3;
pub const MIN_CURVATURE: f64 = 1e-6;
/// Golden-section iterations used by [`UnitBall::dist_point_ray`].
pub const DIST_ITERATIONS: usize = 200;

/// One term `a cos(k theta) + b sin(k theta)` of a radial Fourier boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub k: u32,
    pub a: f64,
    #[serde(default)]
    pub b: f64,
}

/// An origin-symmetric, strictly convex, smooth unit disk.
///
/// The serde representation is the ball JSON accepted on the command line:
/// `{"kind":"ellipse","q":[q11,q12,q22]}`, `{"kind":"lp","p":4.0}` or
/// `{"kind":"radial_fourier","c0":1.0,"harmonics":[{"k":2,"a":0.05,"b":0.0}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum UnitBall {
    /// `{v : v^T Q v <= 1}` with `q = [q11, q12, q22]`.
    Ellipse { q: [f64; 3] },
    /// `{v : |x|^p + |y|^p <= 1}`.
    Lp { p: f64 },
    /// Boundary radius `c0 + sum a_k cos(k theta) + b_k sin(k theta)`, even `k`.
    RadialFourier { c0: f64, harmonics: Vec<Harmonic> },
}

/// First violated invariant of a [`UnitBall`].
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub reason: String,
    /// Boundary angle at which a grid check failed.
    pub witness_angle: Option<f64>,
}

impl Violation {
    fn new(reason: impl Into<String>) -> Self {
        Violation {
            reason: reason.into(),
            witness_angle: None,
        }
    }

    fn at(reason: impl Into<String>, theta: f64) -> Self {
        Violation {
            reason: reason.into(),
            witness_angle: Some(theta),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness_angle {
            Some(t) => write!(f, "{} (at theta = {t})", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

/// A point of the boundary together with its tangent direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub point: Vec2,
    /// Unit tangent, oriented counterclockwise.
    pub tangent_dir: Vec2,
}

/// Normed distance from a point to a ray and the ray parameter attaining it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayDistance {
    pub d: f64,
    pub s_star: f64,
}

impl UnitBall {
    /// The Euclidean unit disk.
    pub fn circle() -> UnitBall {
        UnitBall::Ellipse { q: [1.0, 0.0, 1.0] }
    }

    pub fn ellipse(q11: f64, q12: f64, q22: f64) -> Result<UnitBall> {
        UnitBall::Ellipse { q: [q11, q12, q22] }.validated()
    }

    pub fn lp(p: f64) -> Result<UnitBall> {
        UnitBall::Lp { p }.validated()
    }

    pub fn radial_fourier(c0: f64, harmonics: Vec<Harmonic>) -> Result<UnitBall> {
        UnitBall::RadialFourier { c0, harmonics }.validated()
    }

    /// Returns `self` if it passes [`UnitBall::validate`].
    pub fn validated(self) -> Result<UnitBall> {
        self.validate().map_err(Error::InvalidBall)?;
        Ok(self)
    }

    /// Checks the invariants of the variant and reports the first failure.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        match self {
            UnitBall::Ellipse { q: [q11, q12, q22] } => {
                if !(q11.is_finite() && q12.is_finite() && q22.is_finite()) {
                    return Err(Violation::new("ellipse matrix has non-finite entries"));
                }
                if *q11 <= 0.0 {
                    return Err(Violation::new("ellipse requires q11 > 0"));
                }
                if q11 * q22 - q12 * q12 <= 0.0 {
                    return Err(Violation::new("ellipse requires q11*q22 - q12^2 > 0"));
                }
                Ok(())
            }
            UnitBall::Lp { p } => {
                if !(LP_RANGE.0..=LP_RANGE.1).contains(p) {
                    return Err(Violation::new(format!(
                        "lp exponent {p} outside [{}, {}]",
                        LP_RANGE.0, LP_RANGE.1
                    )));
                }
                Ok(())
            }
            UnitBall::RadialFourier { c0, harmonics } => {
                if !c0.is_finite() {
                    return Err(Violation::new("c0 is not finite"));
                }
                for h in harmonics {
                    if h.k < 2 || h.k % 2 != 0 {
                        return Err(Violation::new(format!(
                            "harmonic order {} is not an even integer >= 2",
                            h.k
                        )));
                    }
                    if !(h.a.is_finite() && h.b.is_finite()) {
                        return Err(Violation::new("harmonic coefficient is not finite"));
                    }
                }
                for i in 0..VALIDATION_GRID {
                    let theta = TAU * i as f64 / VALIDATION_GRID as f64;
                    let (r, r1, r2) = radial_derivs(*c0, harmonics, theta);
                    if r < MIN_RADIUS {
                        return Err(Violation::at(format!("radius {r} below {MIN_RADIUS}"), theta));
                    }
                    let kappa = r * r + 2.0 * r1 * r1 - r * r2;
                    if kappa < MIN_CURVATURE {
                        return Err(Violation::at(
                            format!("curvature numerator {kappa} below {MIN_CURVATURE}"),
                            theta,
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// The Minkowski functional `inf {t > 0 : v / t in M}`.
    pub fn gauge(&self, v: Vec2) -> f64 {
        match self {
            UnitBall::Ellipse { q: [q11, q12, q22] } => {
                let s = q11 * v.x * v.x + 2.0 * q12 * v.x * v.y + q22 * v.y * v.y;
                s.max(0.0).sqrt()
            }
            UnitBall::Lp { p } => {
                let (ax, ay) = (v.x.abs(), v.y.abs());
                let m = ax.max(ay);
                if m == 0.0 {
                    return 0.0;
                }
                m * ((ax / m).powf(*p) + (ay / m).powf(*p)).powf(1.0 / p)
            }
            UnitBall::RadialFourier { c0, harmonics } => {
                let n = v.norm();
                if n == 0.0 {
                    return 0.0;
                }
                n / radial_derivs(*c0, harmonics, v.angle()).0
            }
        }
    }

    /// Gradient of the gauge at `v != 0` (homogeneous of degree 0).
    pub fn gradient(&self, v: Vec2) -> Vec2 {
        match self {
            UnitBall::Ellipse { q: [q11, q12, q22] } => {
                Vec2::new(q11 * v.x + q12 * v.y, q12 * v.x + q22 * v.y) / self.gauge(v)
            }
            UnitBall::Lp { p } => {
                let m = v.x.abs().max(v.y.abs());
                let (x, y) = (v.x / m, v.y / m);
                let s = x.abs().powf(*p) + y.abs().powf(*p);
                Vec2::new(
                    x.signum() * x.abs().powf(p - 1.0),
                    y.signum() * y.abs().powf(p - 1.0),
                ) * s.powf(1.0 / p - 1.0)
            }
            UnitBall::RadialFourier { c0, harmonics } => {
                let n = v.norm();
                let (r, r1, _) = radial_derivs(*c0, harmonics, v.angle());
                let u = v / n;
                u / r - u.perp() * (r1 / (r * r))
            }
        }
    }

    /// Euclidean radius of the boundary in direction `theta`.
    pub fn radius(&self, theta: f64) -> f64 {
        match self {
            UnitBall::RadialFourier { c0, harmonics } => radial_derivs(*c0, harmonics, theta).0,
            _ => 1.0 / self.gauge(Vec2::from_angle(theta)),
        }
    }

    /// Boundary point at polar angle `theta` and its unit tangent.
    pub fn boundary_at(&self, theta: f64) -> BoundaryPoint {
        let u = Vec2::from_angle(theta);
        let (point, raw_tangent) = match self {
            UnitBall::Ellipse { q: [q11, q12, q22] } => {
                let p = u / self.gauge(u);
                let grad = Vec2::new(q11 * p.x + q12 * p.y, q12 * p.x + q22 * p.y);
                (p, grad.perp())
            }
            UnitBall::Lp { p: e } => {
                let p = u / self.gauge(u);
                let grad = Vec2::new(
                    p.x.signum() * p.x.abs().powf(e - 1.0),
                    p.y.signum() * p.y.abs().powf(e - 1.0),
                );
                (p, grad.perp())
            }
            UnitBall::RadialFourier { c0, harmonics } => {
                let (r, r1, _) = radial_derivs(*c0, harmonics, theta);
                (u * r, u * r1 + u.perp() * r)
            }
        };
        BoundaryPoint {
            theta: wrap_angle(theta),
            point,
            tangent_dir: raw_tangent
                .normalized()
                .expect("validated balls have nonvanishing boundary derivatives"),
        }
    }

    /// Boundary point in the direction of `v` (that is, `v / gauge(v)`).
    pub fn boundary_toward(&self, v: Vec2) -> BoundaryPoint {
        self.boundary_at(v.angle())
    }

    /// Tangent line of the ball at `boundary_at(theta)`.
    pub fn tangent_line_at(&self, theta: f64) -> Line {
        let b = self.boundary_at(theta);
        Line {
            point: b.point,
            dir: b.tangent_dir,
        }
    }

    /// Normed distance from `p` to the closed ray `r`.
    ///
    /// `s -> gauge(p - r.at(s))` is convex, so a doubling bracket on `s >= 0`
    /// followed by golden-section search finds the minimizer.
    pub fn dist_point_ray(&self, p: Vec2, r: &Ray) -> RayDistance {
        let off = p - r.apex;
        let step = off.norm().max(1e-12);
        let m = scalar::minimize_convex_halfline(
            |s| self.gauge(off - r.dir * s),
            step,
            DIST_ITERATIONS,
        );
        RayDistance {
            d: m.value,
            s_star: m.arg.max(0.0),
        }
    }

    /// Image of the ball under an invertible linear map, when the image is
    /// representable (ellipses only).
    pub fn linear_image(&self, m: &Mat2) -> Option<UnitBall> {
        match self {
            UnitBall::Ellipse { q: [q11, q12, q22] } => {
                // {A v : v^T Q v <= 1} = {w : w^T A^-T Q A^-1 w <= 1}
                let inv = m.inverse()?;
                let q = Mat2::new(*q11, *q12, *q12, *q22);
                let r = inv.transpose().mul(&q).mul(&inv);
                let off = 0.5 * (r.m[0][1] + r.m[1][0]);
                Some(UnitBall::Ellipse {
                    q: [r.m[0][0], off, r.m[1][1]],
                })
            }
            _ => None,
        }
    }
}

/// `r`, `r'`, `r''` of a radial Fourier boundary at `theta`.
fn radial_derivs(c0: f64, harmonics: &[Harmonic], theta: f64) -> (f64, f64, f64) {
    let mut r = c0;
    let mut r1 = 0.0;
    let mut r2 = 0.0;
    for h in harmonics {
        let k = h.k as f64;
        let (s, c) = (k * theta).sin_cos();
        r += h.a * c + h.b * s;
        r1 += k * (h.b * c - h.a * s);
        r2 -= k * k * (h.a * c + h.b * s);
    }
    (r, r1, r2)
}
