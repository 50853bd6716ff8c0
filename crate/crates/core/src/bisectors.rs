//! Angular bisectors in a normed plane and billiard reflection on a line.
//!
//! Three bisectors of a pair of rays `[a, a+u>`, `[a, a+v>` are provided:
//!
//! * Busemann: the ray in direction `u/|u| + v/|v|` (norm normalization).
//! * Glogovskij: the points of the sector equidistant from both rays.
//! * billiard: the internal bisector obtained from the tangent-line
//!   construction of billiard reflection.
//!
//! They coincide for every pair exactly when the unit ball is an ellipse,
//! which is what [`compare_bisectors`] measures.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{angle_dist, line_intersect, Line, Ray, Vec2};
use crate::minkowski::UnitBall;
use crate::rng::Lcg64;
use crate::tangency::{tangent_points_from, PlacedBody};

/// Minimal angular separation of a pair from the identical/opposite cases.
pub const PAIR_ANGLE_EPS: f64 = 1e-9;
/// Offset of the Glogovskij angle bracket from the two arms.
pub const BRACKET_EPS: f64 = 1e-9;
/// Width at which the Glogovskij angle bisection stops.
pub const ANGLE_XTOL: f64 = 1e-14;
/// Largest `|g(z) - g(z')|` accepted as "equidistant" by the witness.
pub const EQUIDISTANT_TOL: f64 = 1e-6;
/// Largest offset of a ray apex from the mirror line.
pub const ON_LINE_TOL: f64 = 1e-9;
/// `|sin|` of the incidence angle below which reflection is grazing.
pub const GRAZING_EPS: f64 = 1e-9;
/// Slack of the sector membership test, on `|cross|` of unit vectors.
pub const SECTOR_TOL: f64 = 1e-12;

/// Two rays sharing an apex, with unit Euclidean directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RayPair {
    pub apex: Vec2,
    pub u: Vec2,
    pub v: Vec2,
}

impl RayPair {
    /// Normalizes both directions and rejects identical or opposite rays.
    pub fn new(apex: Vec2, u: Vec2, v: Vec2) -> Result<RayPair> {
        if !apex.is_finite() {
            return Err(Error::NonFinite);
        }
        let pair = RayPair {
            apex,
            u: u.normalized()?,
            v: v.normalized()?,
        };
        let a = pair.opening().abs();
        if a < PAIR_ANGLE_EPS || PI - a < PAIR_ANGLE_EPS {
            return Err(Error::DegeneratePair);
        }
        Ok(pair)
    }

    pub fn from_angles(apex: Vec2, u_angle: f64, v_angle: f64) -> Result<RayPair> {
        RayPair::new(apex, Vec2::from_angle(u_angle), Vec2::from_angle(v_angle))
    }

    /// Signed angle from `u` to `v`, in `(-pi, pi)`.
    pub fn opening(&self) -> f64 {
        self.u.cross(self.v).atan2(self.u.dot(self.v))
    }

    pub fn ray_u(&self) -> Ray {
        Ray {
            apex: self.apex,
            dir: self.u,
        }
    }

    pub fn ray_v(&self) -> Ray {
        Ray {
            apex: self.apex,
            dir: self.v,
        }
    }

    pub fn swapped(&self) -> RayPair {
        RayPair {
            apex: self.apex,
            u: self.v,
            v: self.u,
        }
    }

    /// Whether direction `d` lies in the closed convex sector spanned by `u`, `v`.
    pub fn contains_dir(&self, d: Vec2) -> bool {
        let s = self.opening().signum();
        let d = match d.normalized() {
            Ok(d) => d,
            Err(_) => return true,
        };
        s * self.u.cross(d) >= -SECTOR_TOL
            && s * d.cross(self.v) >= -SECTOR_TOL
            && (self.u + self.v).dot(d) > -SECTOR_TOL
    }
}

/// Busemann bisector: direction `u/|u|_M + v/|v|_M`.
pub fn busemann(m: &UnitBall, pair: &RayPair) -> Result<Ray> {
    let w = pair.u / m.gauge(pair.u) + pair.v / m.gauge(pair.v);
    if w.norm() < 1e-12 {
        return Err(Error::DegenerateDirection);
    }
    Ray::new(pair.apex, w)
}

/// Glogovskij bisector: the ray of points equidistant (in `m`) from both rays.
///
/// Bisects, over directions `w` between `u` and `v`, the sign change of
/// `dist(apex + w, ray_u) - dist(apex + w, ray_v)`.
pub fn glogovskij(m: &UnitBall, pair: &RayPair) -> Result<Ray> {
    let alpha = pair.opening();
    let sign = alpha.signum();
    let (ru, rv) = (pair.ray_u(), pair.ray_v());
    let dir_at = |phi: f64| pair.u.rotated(sign * phi);
    let g = |phi: f64| {
        let z = pair.apex + dir_at(phi);
        m.dist_point_ray(z, &ru).d - m.dist_point_ray(z, &rv).d
    };
    let lo = BRACKET_EPS;
    let hi = alpha.abs() - BRACKET_EPS;
    let (glo, ghi) = (g(lo), g(hi));
    if !(glo < 0.0 && ghi > 0.0) {
        return Err(Error::BracketFailure);
    }
    let phi =
        crate::scalar::bisect(g, lo, hi, ANGLE_XTOL, 0.0).ok_or(Error::BracketFailure)?;
    Ray::new(pair.apex, dir_at(phi))
}

/// Common distance of `z` to both rays and the touching points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlogovskijWitness {
    pub lambda: f64,
    pub touch_b: Vec2,
    pub touch_c: Vec2,
}

/// For `z` on the Glogovskij bisector, the homothet `z + lambda M` touching
/// both rays.
pub fn glogovskij_witness(m: &UnitBall, pair: &RayPair, z: Vec2) -> Result<GlogovskijWitness> {
    if !pair.contains_dir(z - pair.apex) {
        return Err(Error::OutsideSector);
    }
    let (ru, rv) = (pair.ray_u(), pair.ray_v());
    let db = m.dist_point_ray(z, &ru);
    let dc = m.dist_point_ray(z, &rv);
    if (db.d - dc.d).abs() > EQUIDISTANT_TOL {
        return Err(Error::NotEquidistant {
            d_b: db.d,
            d_c: dc.d,
        });
    }
    Ok(GlogovskijWitness {
        lambda: 0.5 * (db.d + dc.d),
        touch_b: ru.at(db.s_star),
        touch_c: rv.at(dc.s_star),
    })
}

/// Billiard reflection of `incoming` on the mirror `line`.
///
/// The outgoing direction `c` is the one for which the tangent lines of `m`
/// at `-b/|b|` and `c/|c|` meet on the mirror (translated through the
/// origin). When the first tangent is parallel to the mirror the meeting point
/// is at infinity and the ray is sent straight back.
pub fn billiard_reflect(m: &UnitBall, line: &Line, incoming: &Ray) -> Result<Ray> {
    let off = line.signed_dist(incoming.apex);
    if off.abs() > ON_LINE_TOL {
        return Err(Error::ApexOffLine(off));
    }
    let side = line.dir.cross(incoming.dir);
    if side.abs() < GRAZING_EPS {
        return Err(Error::Grazing);
    }
    let back = m.tangent_line_at((-incoming.dir).angle());
    let mirror = Line {
        point: Vec2::ZERO,
        dir: line.dir,
    };
    let w = match line_intersect(&back, &mirror) {
        Some(w) => w,
        None => return Ok(*incoming),
    };
    let unit = PlacedBody::unit(m.clone());
    let (t1, t2) = tangent_points_from(&unit, w).map_err(|e| match e {
        Error::PointInside { .. } => Error::Grazing,
        other => other,
    })?;
    let candidates = [t1, t2].map(|t| m.boundary_at(t).point);
    let same_side: Vec<Vec2> = candidates
        .into_iter()
        .filter(|q| line.dir.cross(*q).signum() == side.signum() && q.norm() > 0.0)
        .collect();
    let out = match same_side.as_slice() {
        [q] => *q,
        [q1, q2] => {
            // keep the one farther from the incoming tangent point
            let back_pt = back.point;
            if (*q1 - back_pt).norm() >= (*q2 - back_pt).norm() {
                *q1
            } else {
                *q2
            }
        }
        _ => return Err(Error::SideSelection),
    };
    Ray::new(incoming.apex, out)
}

/// `|d/dt F(a + t * line.dir)|` at `t = 0` for `F(z) = |z - b| + |z - c|`,
/// by a central difference. Vanishes exactly when `[a,c>` is a billiard
/// reflection of `[a,b>` on `line`.
pub fn criticality_residual(m: &UnitBall, line: &Line, a: Vec2, b: Vec2, c: Vec2) -> f64 {
    let h = 1e-6 * (1.0 + (b - a).norm() + (c - a).norm());
    let f = |z: Vec2| m.gauge(z - b) + m.gauge(z - c);
    ((f(a + line.dir * h) - f(a - line.dir * h)) / (2.0 * h)).abs()
}

/// Line through the meeting point of the tangents of `m` at `-u/|u|` and
/// `v/|v|`, translated to the apex.
fn tangent_meet_line(m: &UnitBall, apex: Vec2, u: Vec2, v: Vec2) -> Result<Line> {
    let t1 = m.tangent_line_at((-u).angle());
    let t2 = m.tangent_line_at(v.angle());
    let w = line_intersect(&t1, &t2).ok_or(Error::ParallelTangents)?;
    Line::new(apex, w).map_err(|_| Error::ParallelTangents)
}

/// External billiard bisector: the mirror line on which `[a, a+v>` is the
/// billiard reflection of `[a, a+u>`.
pub fn external_billiard_bisector(m: &UnitBall, pair: &RayPair) -> Result<Line> {
    tangent_meet_line(m, pair.apex, pair.u, pair.v)
}

/// Internal billiard bisector: the ray, inside the sector, of the external
/// bisector of `u` and `-v`.
pub fn billiard_bisector(m: &UnitBall, pair: &RayPair) -> Result<Ray> {
    let line = tangent_meet_line(m, pair.apex, pair.u, -pair.v)?;
    for d in [line.dir, -line.dir] {
        if pair.contains_dir(d) {
            return Ray::new(pair.apex, d);
        }
    }
    Err(Error::HullSelection)
}

/// Directions of the three bisectors of one pair and their pairwise
/// angular deviations (radians).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BisectorReport {
    pub pair: RayPair,
    pub ang_busemann: f64,
    pub ang_glogovskij: f64,
    pub ang_billiard: f64,
    /// billiard vs Glogovskij
    pub dev_billiard_glogovskij: f64,
    /// billiard vs Busemann
    pub dev_billiard_busemann: f64,
    /// Glogovskij vs Busemann
    pub dev_glogovskij_busemann: f64,
}

impl BisectorReport {
    pub fn max_dev(&self) -> f64 {
        self.dev_billiard_glogovskij
            .max(self.dev_billiard_busemann)
            .max(self.dev_glogovskij_busemann)
    }
}

pub fn bisector_report(m: &UnitBall, pair: &RayPair) -> Result<BisectorReport> {
    let bu = busemann(m, pair)?.angle();
    let gl = glogovskij(m, pair)?.angle();
    let bi = billiard_bisector(m, pair)?.angle();
    Ok(BisectorReport {
        pair: *pair,
        ang_busemann: bu,
        ang_glogovskij: gl,
        ang_billiard: bi,
        dev_billiard_glogovskij: angle_dist(bi, gl),
        dev_billiard_busemann: angle_dist(bi, bu),
        dev_glogovskij_busemann: angle_dist(gl, bu),
    })
}

/// One report (or error) per input pair, in input order.
pub fn compare_bisectors(m: &UnitBall, pairs: &[RayPair]) -> Vec<Result<BisectorReport>> {
    compare_bisectors_with(m, pairs, Exec::default())
}

pub fn compare_bisectors_with(
    m: &UnitBall,
    pairs: &[RayPair],
    exec: Exec,
) -> Vec<Result<BisectorReport>> {
    exec.map(pairs, |p| bisector_report(m, p))
}

/// Seeded random pairs: apex in `[-1, 1]^2`, first direction uniform, opening
/// uniform in `[min_gap, pi - min_gap]` with random orientation.
pub fn sample_ray_pairs(n: usize, seed: u64, min_gap: f64) -> Vec<RayPair> {
    let mut rng = Lcg64::new(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let apex = Vec2::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        let a = rng.uniform(0.0, TAU);
        let gap = rng.uniform(min_gap, PI - min_gap);
        let sign = if rng.next_f64() < 0.5 { -1.0 } else { 1.0 };
        if let Ok(p) = RayPair::from_angles(apex, a, a + sign * gap) {
            out.push(p);
        }
    }
    out
}
