//! Billiards in convex tables under the normed reflection law, altitudes via
//! Birkhoff orthogonality, and a scanner for pedal-triangle billiard orbits.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::bisectors::{billiard_reflect, criticality_residual};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geom::{AffineMap, Line, Ray, Vec2};
use crate::minkowski::UnitBall;
use crate::rng::Lcg64;
use crate::scalar;
use crate::tangency::PlacedBody;

/// Smallest chord parameter accepted by [`next_hit`].
pub const MIN_CHORD: f64 = 1e-9;
/// Open range of the side parameter for a foot to count as interior.
pub const PEDAL_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Triangle {
    pub a: Vec2,
    pub b: Vec2,
    pub c: Vec2,
}

impl Triangle {
    pub fn new(a: Vec2, b: Vec2, c: Vec2) -> Result<Triangle> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::NonFinite);
        }
        if (b - a).cross(c - a).abs() <= 1e-10 {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle { a, b, c })
    }

    pub fn vertices(&self) -> [Vec2; 3] {
        [self.a, self.b, self.c]
    }

    pub fn mapped(&self, h: &AffineMap) -> Triangle {
        Triangle {
            a: h.apply(self.a),
            b: h.apply(self.b),
            c: h.apply(self.c),
        }
    }

    /// Euclidean interior angles at `a`, `b`, `c`.
    pub fn angles(&self) -> [f64; 3] {
        let at = |p: Vec2, q: Vec2, r: Vec2| {
            let (u, v) = (q - p, r - p);
            u.cross(v).abs().atan2(u.dot(v))
        };
        [
            at(self.a, self.b, self.c),
            at(self.b, self.c, self.a),
            at(self.c, self.a, self.b),
        ]
    }
}

/// A boundary point of the table and its polar angle about the center.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Hit {
    pub point: Vec2,
    pub theta: f64,
}

/// First boundary point of the table met by the chord from `from` along `dir`.
pub fn next_hit(table: &PlacedBody, from: Vec2, dir: Vec2) -> Result<Hit> {
    let g0 = table.membership(from);
    if g0 > 1.0 + 1e-9 {
        return Err(Error::OutsideTable(g0));
    }
    let d = dir.normalized()?;
    let phi = |t: f64| table.membership(from + d * t);
    let mut hi = table.scale;
    let mut grown = 0;
    while phi(hi) <= 1.0 {
        hi *= 2.0;
        grown += 1;
        if grown > 200 {
            return Err(Error::NoIntersection);
        }
    }
    let inner = scalar::golden_section(phi, 0.0, hi, 0.0, 200);
    if inner.value >= 1.0 - 1e-12 {
        return Err(Error::NoIntersection);
    }
    let t = scalar::bisect(|t| phi(t) - 1.0, inner.arg, hi, 0.0, 0.0)
        .ok_or(Error::NoIntersection)?;
    if t <= MIN_CHORD {
        return Err(Error::NoIntersection);
    }
    let point = from + d * t;
    Ok(Hit {
        point,
        theta: table.theta_of(point),
    })
}

/// Bounce history of a billiard trajectory.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRecord {
    pub start: Vec2,
    pub initial_dir: Vec2,
    pub hits: Vec<Hit>,
    /// Outgoing direction after each hit.
    pub directions: Vec<Vec2>,
    /// Least-action criticality residual at each hit.
    pub residuals: Vec<f64>,
    /// Set when the trajectory stopped early (for example a grazing chord).
    pub aborted: Option<String>,
}

/// Iterates chord, hit, and reflection on the tangent line of the table.
pub fn trajectory(
    table: &PlacedBody,
    m: &UnitBall,
    start: Vec2,
    dir: Vec2,
    n_bounces: usize,
) -> Result<TrajectoryRecord> {
    table.validate()?;
    m.validate().map_err(Error::InvalidBall)?;
    let mut d = dir.normalized()?;
    let mut rec = TrajectoryRecord {
        start,
        initial_dir: d,
        hits: Vec::with_capacity(n_bounces),
        directions: Vec::with_capacity(n_bounces),
        residuals: Vec::with_capacity(n_bounces),
        aborted: None,
    };
    let mut pos = start;
    for i in 0..n_bounces {
        let hit = match next_hit(table, pos, d) {
            Ok(h) => h,
            Err(e) if i == 0 => return Err(e),
            Err(e) => {
                rec.aborted = Some(e.to_string());
                break;
            }
        };
        let mirror = Line {
            point: hit.point,
            dir: table.boundary_at(hit.theta).tangent_dir,
        };
        let incoming = Ray {
            apex: hit.point,
            dir: -d,
        };
        let out = match billiard_reflect(m, &mirror, &incoming) {
            Ok(r) => r,
            Err(e) => {
                rec.aborted = Some(e.to_string());
                break;
            }
        };
        let back = (pos - hit.point).norm();
        rec.residuals.push(criticality_residual(
            m,
            &mirror,
            hit.point,
            pos,
            hit.point + out.dir * back,
        ));
        rec.hits.push(hit);
        rec.directions.push(out.dir);
        pos = hit.point;
        d = out.dir;
    }
    Ok(rec)
}

/// Side parameter `s` of the foot `b + s (c - b)` of the altitude from `a`.
///
/// The foot is the gauge-nearest point of line `bc`, which is exactly where
/// `a - foot` is Birkhoff-normal to `c - b`. Golden-section search brackets
/// the minimizer and bisection on the gauge derivative polishes it.
pub fn foot_param(m: &UnitBall, a: Vec2, b: Vec2, c: Vec2) -> Result<f64> {
    let side = c - b;
    if side.cross(a - b).abs() <= 1e-12 * side.norm_sq().max(1.0) {
        return Err(Error::VertexOnSide);
    }
    let f = |s: f64| m.gauge(a - b - side * s);
    let guess = (a - b).dot(side) / side.norm_sq();
    let coarse = scalar::minimize_convex_line(f, guess, 1.0, 1e-12, 400);
    let deriv = |s: f64| -m.gradient(a - b - side * s).dot(side);
    let w = 1e-6 * (1.0 + coarse.arg.abs());
    let (lo, hi) = (coarse.arg - w, coarse.arg + w);
    Ok(scalar::bisect(deriv, lo, hi, 0.0, 0.0).unwrap_or(coarse.arg))
}

/// Foot of the Birkhoff altitude from `a` onto line `bc`.
pub fn foot_of_altitude(m: &UnitBall, a: Vec2, b: Vec2, c: Vec2) -> Result<Vec2> {
    let s = foot_param(m, a, b, c)?;
    Ok(b + (c - b) * s)
}

/// Feet on the sides opposite to `a`, `b`, `c` and their side parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Feet {
    pub points: [Vec2; 3],
    pub params: [f64; 3],
}

pub fn altitude_feet(m: &UnitBall, t: &Triangle) -> Result<Feet> {
    let sa = foot_param(m, t.a, t.b, t.c)?;
    let sb = foot_param(m, t.b, t.c, t.a)?;
    let sc = foot_param(m, t.c, t.a, t.b)?;
    Ok(Feet {
        points: [
            t.b + (t.c - t.b) * sa,
            t.c + (t.a - t.c) * sb,
            t.a + (t.b - t.a) * sc,
        ],
        params: [sa, sb, sc],
    })
}

/// The triangle of altitude feet, or `None` when a foot leaves its side.
pub fn pedal_triangle(m: &UnitBall, t: &Triangle) -> Result<Option<Triangle>> {
    let feet = altitude_feet(m, t)?;
    let interior = feet
        .params
        .iter()
        .all(|&s| s > PEDAL_EPS && s < 1.0 - PEDAL_EPS);
    if !interior {
        return Ok(None);
    }
    let [ha, hb, hc] = feet.points;
    Ok(Some(Triangle {
        a: ha,
        b: hb,
        c: hc,
    }))
}

/// Criticality residual at each pedal vertex along its side line; all three
/// vanish when the pedal triangle is a billiard triangle in `t`.
pub fn fagnano_residual(m: &UnitBall, t: &Triangle) -> Result<[f64; 3]> {
    let pedal = pedal_triangle(m, t)?.ok_or(Error::NoPedalTriangle)?;
    let [ha, hb, hc] = pedal.vertices();
    let ra = criticality_residual(m, &Line::through(t.b, t.c)?, ha, hb, hc);
    let rb = criticality_residual(m, &Line::through(t.c, t.a)?, hb, hc, ha);
    let rc = criticality_residual(m, &Line::through(t.a, t.b)?, hc, ha, hb);
    Ok([ra, rb, rc])
}

/// Seeded triangles inscribed in the unit circle whose Euclidean angles all
/// lie in `[min_angle, pi/2 - min_angle]`.
pub fn sample_acute_triangles(n: usize, seed: u64, min_angle: f64) -> Vec<Triangle> {
    let mut rng = Lcg64::new(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let pts = [0, 1, 2].map(|_| Vec2::from_angle(rng.uniform(0.0, TAU)));
        let Ok(t) = Triangle::new(pts[0], pts[1], pts[2]) else {
            continue;
        };
        if t
            .angles()
            .iter()
            .all(|&a| a >= min_angle && a <= FRAC_PI_2 - min_angle)
        {
            out.push(t);
        }
    }
    out
}

/// Summary of a pedal-orbit scan. Only statistics are reported; the scan
/// makes no claim either way about non-Euclidean norms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FagnanoStats {
    pub samples: usize,
    pub exists: usize,
    pub residual_min: f64,
    pub residual_median: f64,
    pub residual_p90: f64,
    pub residual_max: f64,
}

/// Largest per-vertex residual of each triangle (`None` without a pedal triangle).
pub fn fagnano_scan(m: &UnitBall, triangles: &[Triangle], exec: Exec) -> Vec<Result<Option<f64>>> {
    exec.map(triangles, |t| match fagnano_residual(m, t) {
        Ok(r) => Ok(Some(r[0].max(r[1]).max(r[2]))),
        Err(Error::NoPedalTriangle) => Ok(None),
        Err(e) => Err(e),
    })
}

pub fn fagnano_stats(results: &[Option<f64>]) -> FagnanoStats {
    let mut rs: Vec<f64> = results.iter().flatten().copied().collect();
    rs.sort_by(f64::total_cmp);
    let q = |f: f64| {
        if rs.is_empty() {
            f64::NAN
        } else {
            rs[((rs.len() - 1) as f64 * f).round() as usize]
        }
    };
    FagnanoStats {
        samples: results.len(),
        exists: rs.len(),
        residual_min: q(0.0),
        residual_median: q(0.5),
        residual_p90: q(0.9),
        residual_max: q(1.0),
    }
}

/// Euclidean angles between the tangent line and the incoming / outgoing
/// chords at a bounce.
pub fn tangent_angles(tangent: Vec2, incoming: Vec2, outgoing: Vec2) -> (f64, f64) {
    let ang = |d: Vec2| {
        let a = tangent.cross(d).abs().atan2(tangent.dot(d).abs());
        a.min(PI - a)
    };
    (ang(incoming), ang(outgoing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn circle_table() -> PlacedBody {
        PlacedBody::unit(UnitBall::circle())
    }

    #[test]
    fn hit_examples() {
        let h = next_hit(&circle_table(), Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0)).unwrap();
        assert!((h.point - Vec2::new(1.0, 0.0)).norm() < 1e-12);
        let h = next_hit(&circle_table(), Vec2::new(0.0, -1.0), Vec2::new(1.0, 1.0)).unwrap();
        assert!((h.point - Vec2::new(1.0, 0.0)).norm() < 1e-12);

        let table = PlacedBody::unit(UnitBall::lp(4.0).unwrap());
        let t = 2f64.powf(-0.25);
        let h = next_hit(&table, Vec2::new(-t, -t), Vec2::new(1.0, 0.0)).unwrap();
        assert!((table.membership(h.point) - 1.0).abs() < 1e-10);
        assert!((h.point - Vec2::new(t, -t)).norm() < 1e-12);
    }

    #[test]
    fn outward_chord_rejected() {
        let r = next_hit(&circle_table(), Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0));
        assert_eq!(r, Err(Error::NoIntersection));
        let r = next_hit(&circle_table(), Vec2::new(3.0, 0.0), Vec2::new(-1.0, 0.0));
        assert!(matches!(r, Err(Error::OutsideTable(_))));
    }

    #[test]
    fn equilateral_orbit_closes() {
        let start = Vec2::new(1.0, 0.0);
        let dir = Vec2::new(-(FRAC_PI_3.sin()), FRAC_PI_3.cos());
        let rec = trajectory(&circle_table(), &UnitBall::circle(), start, dir, 4).unwrap();
        assert!(rec.aborted.is_none());
        assert!((rec.hits[2].point - start).norm() < 1e-8);
        assert!((rec.hits[3].point - rec.hits[0].point).norm() < 1e-8);
        assert!(rec.residuals.iter().all(|&r| r < 1e-9));
    }

    #[test]
    fn euclidean_feet() {
        let c = UnitBall::circle();
        let f = foot_of_altitude(&c, Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0))
            .unwrap();
        assert!(f.norm() < 1e-12);
        let s3 = 3f64.sqrt();
        let t = Triangle::new(Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0), Vec2::new(1.0, s3)).unwrap();
        let p = pedal_triangle(&c, &t).unwrap().unwrap();
        assert!((p.a - Vec2::new(1.5, s3 / 2.0)).norm() < 1e-12);
        assert!((p.b - Vec2::new(0.5, s3 / 2.0)).norm() < 1e-12);
        assert!((p.c - Vec2::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn obtuse_has_no_pedal() {
        let t = Triangle::new(Vec2::new(0.0, 0.0), Vec2::new(4.0, 0.0), Vec2::new(0.2, 0.3)).unwrap();
        assert_eq!(pedal_triangle(&UnitBall::circle(), &t).unwrap(), None);
        assert_eq!(
            fagnano_residual(&UnitBall::circle(), &t),
            Err(Error::NoPedalTriangle)
        );
    }

    #[test]
    fn degenerate_triangle_rejected() {
        assert_eq!(
            Triangle::new(Vec2::ZERO, Vec2::new(1.0, 1.0), Vec2::new(2.0, 2.0)),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn stats_quantiles() {
        let s = fagnano_stats(&[Some(3.0), None, Some(1.0), Some(2.0)]);
        assert_eq!(s.samples, 4);
        assert_eq!(s.exists, 3);
        assert_eq!((s.residual_min, s.residual_median, s.residual_max), (1.0, 2.0, 3.0));
    }
}
