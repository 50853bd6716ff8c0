//! Plane primitives: vectors, rays, lines and affine maps.
//!
//! Directions are always stored with unit Euclidean length. Normalizing with
//! respect to a gauge is left to the callers that need it.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Threshold on `|cross(d1, d2)|` of two unit directions below which lines
/// are treated as parallel.
pub const PARALLEL_EPS: f64 = 1e-12;

/// Allowed deviation of a stored direction from unit Euclidean length.
pub const UNIT_EPS: f64 = 1e-12;

/// A point or a free vector of the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Vec2 { x, y }
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    /// Checked constructor; rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Vec2 { x, y })
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Unit vector at polar angle `theta`.
    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Vec2 { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is
    /// counterclockwise from `self`.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Polar angle in `(-pi, pi]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean normalization; fails for (near) zero or non-finite input.
    pub fn normalized(self) -> Result<Vec2> {
        let n = self.norm();
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n < 1e-300 {
            return Err(Error::ZeroDirection);
        }
        Ok(self / n)
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, t: f64) -> Vec2 {
        Vec2::new(self.x * t, self.y * t)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, t: f64) -> Vec2 {
        Vec2::new(self.x / t, self.y / t)
    }
}

/// Closed ray `apex + s * dir`, `s >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub apex: Vec2,
    pub dir: Vec2,
}

impl Ray {
    /// Builds a ray, normalizing `dir`.
    pub fn new(apex: Vec2, dir: Vec2) -> Result<Ray> {
        if !apex.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Ray {
            apex,
            dir: dir.normalized()?,
        })
    }

    /// Ray from `apex` through `through`.
    pub fn through(apex: Vec2, through: Vec2) -> Result<Ray> {
        Ray::new(apex, through - apex)
    }

    #[inline]
    pub fn at(&self, s: f64) -> Vec2 {
        self.apex + self.dir * s
    }

    pub fn angle(&self) -> f64 {
        self.dir.angle()
    }
}

/// Line `point + t * dir`, `t` real. `dir` and `-dir` describe the same line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Vec2,
    pub dir: Vec2,
}

impl Line {
    pub fn new(point: Vec2, dir: Vec2) -> Result<Line> {
        if !point.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Line {
            point,
            dir: dir.normalized()?,
        })
    }

    pub fn through(p: Vec2, q: Vec2) -> Result<Line> {
        Line::new(p, q - p)
    }

    #[inline]
    pub fn at(&self, t: f64) -> Vec2 {
        self.point + self.dir * t
    }

    /// Signed Euclidean distance; positive to the left of `dir`.
    #[inline]
    pub fn signed_dist(&self, p: Vec2) -> f64 {
        self.dir.cross(p - self.point)
    }

    /// Parameter of the orthogonal projection of `p` onto the line.
    #[inline]
    pub fn project_param(&self, p: Vec2) -> f64 {
        self.dir.dot(p - self.point)
    }

    /// The same line moved by `shift`.
    pub fn translated(&self, shift: Vec2) -> Line {
        Line {
            point: self.point + shift,
            dir: self.dir,
        }
    }
}

/// Intersection of two lines; `None` when they are parallel.
pub fn line_intersect(l1: &Line, l2: &Line) -> Option<Vec2> {
    let denom = l1.dir.cross(l2.dir);
    if denom.abs() < PARALLEL_EPS {
        return None;
    }
    let t = (l2.point - l1.point).cross(l2.dir) / denom;
    Some(l1.at(t))
}

/// Row-major 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub m: [[f64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Mat2 {
        Mat2 {
            m: [[a, b], [c, d]],
        }
    }

    pub fn diag(a: f64, d: f64) -> Mat2 {
        Mat2::new(a, 0.0, 0.0, d)
    }

    pub fn rotation(angle: f64) -> Mat2 {
        let (s, c) = angle.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d.abs() <= AffineMap::DET_EPS || !d.is_finite() {
            return None;
        }
        Some(Mat2::new(
            self.m[1][1] / d,
            -self.m[0][1] / d,
            -self.m[1][0] / d,
            self.m[0][0] / d,
        ))
    }

    #[inline]
    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// `p -> linear * p + shift` with an invertible linear part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    linear: Mat2,
    shift: Vec2,
}

impl AffineMap {
    pub const DET_EPS: f64 = 1e-12;

    pub fn new(linear: Mat2, shift: Vec2) -> Result<AffineMap> {
        let det = linear.det();
        if !det.is_finite() || !shift.is_finite() {
            return Err(Error::NonFinite);
        }
        if det.abs() <= Self::DET_EPS {
            return Err(Error::SingularMap { det });
        }
        Ok(AffineMap { linear, shift })
    }

    pub fn linear_only(linear: Mat2) -> Result<AffineMap> {
        AffineMap::new(linear, Vec2::ZERO)
    }

    pub fn identity() -> AffineMap {
        AffineMap {
            linear: Mat2::IDENTITY,
            shift: Vec2::ZERO,
        }
    }

    pub fn linear(&self) -> &Mat2 {
        &self.linear
    }

    pub fn shift(&self) -> Vec2 {
        self.shift
    }

    pub fn inverse(&self) -> AffineMap {
        // det bounded away from zero at construction
        let inv = self.linear.inverse().expect("invertible by construction");
        AffineMap {
            linear: inv,
            shift: -inv.apply(self.shift),
        }
    }

    #[inline]
    pub fn apply(&self, p: Vec2) -> Vec2 {
        self.linear.apply(p) + self.shift
    }

    #[inline]
    pub fn apply_vector(&self, v: Vec2) -> Vec2 {
        self.linear.apply(v)
    }

    pub fn apply_ray(&self, r: &Ray) -> Ray {
        Ray {
            apex: self.apply(r.apex),
            dir: self
                .linear
                .apply(r.dir)
                .normalized()
                .expect("invertible map keeps directions nonzero"),
        }
    }

    pub fn apply_line(&self, l: &Line) -> Line {
        Line {
            point: self.apply(l.point),
            dir: self
                .linear
                .apply(l.dir)
                .normalized()
                .expect("invertible map keeps directions nonzero"),
        }
    }
}

/// Absolute angular difference folded into `[0, pi]`.
pub fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Angle folded into `[0, 2pi)`.
pub fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(std::f64::consts::TAU);
    if w >= std::f64::consts::TAU {
        0.0
    } else {
        w
    }
}
