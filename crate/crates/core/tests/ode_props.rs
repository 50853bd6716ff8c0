use normplane::ode_verify::{
    boundary_ode_deviation, busemann_ode_residual, c2gen_slope, conic_residual, fit_conic_c,
    implicit_matrix, implicite_classify, integrate_c2gen, member_drift, ConicKind, ConicParams,
    OdeKind,
};
use normplane::{UnitBall, Vec2};
use proptest::prelude::*;

const MEMBERS: [f64; 7] = [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5];

/// Cubic Hermite interpolation of an integrated curve, using the slope field
/// at the nodes.
fn hermite_at(points: &[Vec2], x: f64) -> f64 {
    let i = points.partition_point(|p| p.x <= x).clamp(1, points.len() - 1);
    let (p0, p1) = (points[i - 1], points[i]);
    let h = p1.x - p0.x;
    let t = (x - p0.x) / h;
    let (m0, m1) = (c2gen_slope(p0.x, p0.y).unwrap(), c2gen_slope(p1.x, p1.y).unwrap());
    let (t2, t3) = (t * t, t * t * t);
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0.y
        + (t3 - 2.0 * t2 + t) * h * m0
        + (-2.0 * t3 + 3.0 * t2) * p1.y
        + (t3 - t2) * h * m1
}

#[test]
fn integral_curves_stay_on_their_member() {
    for c in MEMBERS {
        let p = ConicParams { c };
        let y0 = p.y_at(0.05).unwrap();
        let line = integrate_c2gen(0.05, y0, 0.95, 1e-4).unwrap();
        assert!(!line.halted);
        let fit = fit_conic_c(&line.points).unwrap();
        assert!(fit.max_residual < 1e-6, "c = {c}: {fit:?}");
        assert!((fit.c - c).abs() < 1e-6);
    }
}

#[test]
fn rk4_is_fourth_order() {
    for c in MEMBERS {
        let p = ConicParams { c };
        let coarse = member_drift(p, 0.05, 0.95, 1e-2).unwrap();
        let fine = member_drift(p, 0.05, 0.95, 5e-3).unwrap();
        let ratio = coarse / fine;
        assert!((8.0..=32.0).contains(&ratio), "c = {c}: ratio {ratio}");
    }
}

#[test]
fn family_is_symmetric_about_diagonal() {
    for c in MEMBERS {
        let p = ConicParams { c };
        let line = integrate_c2gen(0.05, p.y_at(0.05).unwrap(), 0.95, 1e-3).unwrap();
        for q in &line.points {
            if (0.06..=0.94).contains(&q.y) {
                let err = (hermite_at(&line.points, q.y) - q.x).abs();
                assert!(err < 1e-7, "c = {c} at {q:?}: {err}");
            }
        }
    }
}

#[test]
fn busemann_members_solve_their_ode() {
    for c in [-2.0, -0.5, 0.5, 1.0, 2.0, 3.7] {
        for i in 0..1000 {
            let x = -0.999 + 1.998 * i as f64 / 999.0;
            let s = (1.0 - x * x).sqrt();
            let r = busemann_ode_residual(x, c * s, -c * x / s).unwrap();
            assert!(r.abs() < 1e-12, "c = {c}, x = {x}: {r}");
        }
    }
}

#[test]
fn boundary_deviation_separates_circle_from_l4() {
    let circle = UnitBall::circle();
    for kind in [OdeKind::Combined, OdeKind::Busemann] {
        assert!(boundary_ode_deviation(&circle, kind, 1000).unwrap() < 1e-9);
    }
    let l4 = UnitBall::lp(4.0).unwrap();
    assert!(boundary_ode_deviation(&l4, OdeKind::Busemann, 1000).unwrap() > 1e-2);
}

#[test]
fn kind_thresholds() {
    let cases = [
        (0.0, ConicKind::HyperbolaConcaveArc),
        (0.5, ConicKind::HyperbolaConcaveArc),
        (1.0, ConicKind::LinePair),
        (1.2, ConicKind::HyperbolaConvexArc),
        (2f64.sqrt(), ConicKind::Parabola),
        (1.5, ConicKind::Ellipse),
        (3.0, ConicKind::Ellipse),
    ];
    for (cbar, kind) in cases {
        assert_eq!(implicite_classify(cbar).kind, kind, "cbar = {cbar}");
    }
}

proptest! {
    #[test]
    fn eigenpairs_exact(cbar in -5.0..5.0f64) {
        let m = implicit_matrix(cbar);
        let cl = implicite_classify(cbar);
        let s = cbar * cbar;
        let (e1, e2) = (cl.eigvecs.0, cl.eigvecs.1);
        let apply = |v: Vec2| Vec2::new(m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y);
        let tol = 4.0 * f64::EPSILON * (1.0 + s);
        prop_assert!((apply(e1) - e1 * (2.0 - s)).norm() <= tol);
        prop_assert!((apply(e2) - e2 * (-s)).norm() <= tol);
        prop_assert_eq!(cl.eigvals, (2.0 - s, -s));
    }

    #[test]
    fn endpoints_on_every_member(c in -1e6..1e6f64) {
        let p = ConicParams { c };
        prop_assert_eq!(conic_residual(1.0, 0.0, p), 0.0);
        prop_assert_eq!(conic_residual(0.0, 1.0, p), 0.0);
    }
}
