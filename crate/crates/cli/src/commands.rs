use std::f64::consts::{PI, TAU};

use normplane::billiards::{fagnano_scan, fagnano_stats, sample_acute_triangles, trajectory};
use normplane::bisectors::{
    billiard_reflect, compare_bisectors, criticality_residual, sample_ray_pairs, BisectorReport,
};
use normplane::ode_verify::{
    boundary_ode_deviation, busemann_ode_residual, conic_drift, fit_conic_c, implicit_matrix,
    implicite_classify, integrate_c2gen, member_drift, ConicParams, OdeKind,
};
use normplane::rng::Lcg64;
use normplane::tangency::{sample_exterior_points, tangent_sweep};
use normplane::{Exec, Line, PlacedBody, Ray, UnitBall, Vec2};
use serde_json::{json, Value};

use crate::args::{Args, Command};
use crate::error::CliError;
use crate::input;
use crate::report::{num, Detail, Output, Table};
use crate::svg::{boundary, Figure};

/// Smallest opening of sampled ray pairs.
pub const PAIR_MIN_GAP: f64 = 0.05;
/// Exterior samples are drawn at `[1.2, 4] * scale * max radius` from the center.
pub const EXTERIOR_RANGE: (f64, f64) = (1.2, 4.0);
/// Smallest Euclidean angle of sampled acute triangles.
pub const TRIANGLE_MIN_ANGLE: f64 = 0.05;
/// Conic members integrated by `ode-verify`.
pub const ODE_MEMBERS: [f64; 7] = [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5];
pub const ODE_SPAN: (f64, f64) = (0.05, 0.95);
pub const ODE_STEP: f64 = 1e-4;
/// Step pair for the order-of-accuracy ratio; at `1e-4` the drift is
/// already at roundoff level.
pub const ORDER_STEPS: (f64, f64) = (1e-2, 5e-3);
pub const CBAR_TABLE: [f64; 7] = [0.0, 0.5, 1.0, 1.2, std::f64::consts::SQRT_2, 1.5, 3.0];
const PANELS: usize = 12;

pub fn run(args: &Args) -> Result<Output, CliError> {
    let ball = args.ball.as_deref().map(input::ball).transpose()?;
    let body = args.body.as_deref().map(input::body).transpose()?;
    if let Some(t) = args.tol {
        if t.is_nan() || t < 0.0 {
            return Err(CliError::Config(format!("--tol must be non-negative, got {t}")));
        }
    }
    let mut out = match args.subcommand {
        Command::Bisect => bisect(args, ball.unwrap_or_else(UnitBall::circle)),
        Command::EqualTangent => equal_tangent(args, ball, body),
        Command::OdeVerify => ode_verify(args, ball),
        Command::Reflect => reflect(args, ball.unwrap_or_else(UnitBall::circle)),
        Command::Billiard => billiard(args, ball, body),
        Command::Fagnano => fagnano(args, ball.unwrap_or_else(UnitBall::circle)),
    }?;
    if let (Some(tol), Value::Object(s)) = (args.tol, &mut out.summary) {
        let metric = s.get("metric").and_then(Value::as_f64).unwrap_or(f64::NAN);
        s.insert("within_tol".into(), Value::Bool(metric < tol));
    }
    if args.svg.is_none() {
        out.figure = None;
    }
    Ok(out)
}

fn config(args: &Args, extra: Value) -> Value {
    let mut c = json!({
        "subcommand": args.subcommand,
        "seed": args.seed,
        "tol": args.tol,
    });
    if let (Value::Object(c), Value::Object(e)) = (&mut c, extra) {
        c.extend(e);
    }
    c
}

fn collect<T>(results: Vec<normplane::Result<T>>) -> Result<Vec<T>, CliError> {
    Ok(results.into_iter().collect::<normplane::Result<Vec<T>>>()?)
}

fn fmax(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

fn bisect(args: &Args, m: UnitBall) -> Result<Output, CliError> {
    let n = args.samples.unwrap_or(100);
    let pairs = sample_ray_pairs(n, args.seed, PAIR_MIN_GAP);
    let reports = collect(compare_bisectors(&m, &pairs))?;
    let mut t = Table::new(&[
        "pair_index", "u_angle", "v_angle", "ang_busemann", "ang_glogovskij", "ang_billiard", "dev_bG",
        "dev_bB", "dev_GB",
    ]);
    for (i, r) in reports.iter().enumerate() {
        t.push(vec![
            i.to_string(),
            num(r.pair.u.angle()),
            num(r.pair.v.angle()),
            num(r.ang_busemann),
            num(r.ang_glogovskij),
            num(r.ang_billiard),
            num(r.dev_billiard_glogovskij),
            num(r.dev_billiard_busemann),
            num(r.dev_glogovskij_busemann),
        ]);
    }
    let max_dev = fmax(reports.iter().map(BisectorReport::max_dev));
    let summary = json!({
        "pairs": n,
        "max_dev_bG": fmax(reports.iter().map(|r| r.dev_billiard_glogovskij)),
        "max_dev_bB": fmax(reports.iter().map(|r| r.dev_billiard_busemann)),
        "max_dev_GB": fmax(reports.iter().map(|r| r.dev_glogovskij_busemann)),
        "max_dev": max_dev,
        "metric": max_dev,
    });
    Ok(Output {
        config: config(args, json!({ "ball": m, "samples": n, "min_gap": PAIR_MIN_GAP })),
        summary,
        detail: Detail::Csv(t),
        figure: Some(bisect_figure(&m, &reports)),
    })
}

fn bisect_figure(m: &UnitBall, reports: &[BisectorReport]) -> String {
    let mut f = Figure::new();
    let cols = 4;
    let ball = boundary(m, Vec2::ZERO, 1.0);
    for (i, r) in reports.iter().take(PANELS).enumerate() {
        let o = Vec2::new(3.0 * (i % cols) as f64, -3.0 * (i / cols) as f64);
        let shifted: Vec<Vec2> = ball.iter().map(|&p| o + p).collect();
        f.polyline(&shifted, "#bbbbbb", 1.0, true);
        f.segment(o, o + r.pair.u * 1.3, "black", 1.5);
        f.segment(o, o + r.pair.v * 1.3, "black", 1.5);
        for (ang, color) in [
            (r.ang_busemann, "#1f77b4"),
            (r.ang_glogovskij, "#2ca02c"),
            (r.ang_billiard, "#d62728"),
        ] {
            f.segment(o, o + Vec2::from_angle(ang) * 1.2, color, 1.0);
        }
    }
    f.render(800.0)
}

fn max_radius(m: &UnitBall) -> f64 {
    fmax((0..1024).map(|i| m.boundary_at(i as f64 * TAU / 1024.0).point.norm()))
}

fn equal_tangent(args: &Args, m: Option<UnitBall>, k: Option<PlacedBody>) -> Result<Output, CliError> {
    let k = match (k, &m) {
        (Some(k), _) => k,
        (None, Some(m)) => PlacedBody::unit(m.clone()),
        (None, None) => PlacedBody::unit(UnitBall::circle()),
    };
    let m = m.unwrap_or_else(|| k.ball.clone());
    let n = args.samples.unwrap_or(500);
    let reach = k.scale * max_radius(&k.ball);
    let range = (EXTERIOR_RANGE.0 * reach, EXTERIOR_RANGE.1 * reach);
    let points = sample_exterior_points(&k, n, range, args.seed)?;
    let pairs = collect(tangent_sweep(&k, &m, &points, Exec::default()))?;
    let mut t = Table::new(&["index", "x", "y", "len1", "len2", "abs_dev", "rel_dev"]);
    let (mut max_abs, mut max_rel, mut worst) = (0.0f64, 0.0f64, points.first().copied());
    for (i, (p, pair)) in points.iter().zip(&pairs).enumerate() {
        t.push(vec![
            i.to_string(),
            num(p.x),
            num(p.y),
            num(pair.len1),
            num(pair.len2),
            num(pair.abs_dev()),
            num(pair.rel_dev()),
        ]);
        max_abs = max_abs.max(pair.abs_dev());
        if pair.rel_dev() > max_rel {
            max_rel = pair.rel_dev();
            worst = Some(*p);
        }
    }
    let mut f = Figure::new();
    f.polyline(&boundary(&k.ball, k.center, k.scale), "black", 1.5, true);
    for (p, pair) in points.iter().zip(&pairs).take(8) {
        f.segment(*p, pair.q1, "#1f77b4", 1.0);
        f.segment(*p, pair.q2, "#d62728", 1.0);
        f.dot(*p, 0.02 * reach, "black");
    }
    Ok(Output {
        config: config(args, json!({ "ball": m, "body": k, "samples": n, "radius_range": range })),
        summary: json!({
            "samples": n,
            "max_abs_dev": max_abs,
            "max_rel_dev": max_rel,
            "worst_point": worst,
            "metric": max_rel,
        }),
        detail: Detail::Csv(t),
        figure: Some(f.render(600.0)),
    })
}

fn ode_verify(args: &Args, m: Option<UnitBall>) -> Result<Output, CliError> {
    let n_grid = args.samples.unwrap_or(1000);
    let mut members = Vec::new();
    let (mut max_fit, mut ratios) = (0.0f64, Vec::new());
    for c in ODE_MEMBERS {
        let p = ConicParams { c };
        let y0 = p.y_at(ODE_SPAN.0).ok_or(normplane::Error::InvalidStart {
            x: ODE_SPAN.0,
            y: f64::NAN,
        })?;
        let line = integrate_c2gen(ODE_SPAN.0, y0, ODE_SPAN.1, ODE_STEP)?;
        let fit = fit_conic_c(&line.points)?;
        let drift = conic_drift(&line.points, p)?;
        let coarse = member_drift(p, ODE_SPAN.0, ODE_SPAN.1, ORDER_STEPS.0)?;
        let fine = member_drift(p, ODE_SPAN.0, ODE_SPAN.1, ORDER_STEPS.1)?;
        max_fit = max_fit.max(fit.max_residual);
        ratios.push(coarse / fine);
        members.push(json!({
            "c": c,
            "points": line.points.len(),
            "halted": line.halted,
            "fitted_c": fit.c,
            "fit_max_residual": fit.max_residual,
            "drift": drift,
            "drift_coarse": coarse,
            "drift_fine": fine,
            "order_ratio": coarse / fine,
        }));
    }
    let mut eigen_max = 0.0f64;
    let classes: Vec<Value> = CBAR_TABLE
        .iter()
        .map(|&cbar| {
            let cl = implicite_classify(cbar);
            let a = implicit_matrix(cbar);
            let apply = |v: Vec2| Vec2::new(a[0][0] * v.x + a[0][1] * v.y, a[1][0] * v.x + a[1][1] * v.y);
            let (e1, e2) = cl.eigvecs;
            eigen_max = eigen_max
                .max((apply(e1) - e1 * cl.eigvals.0).norm())
                .max((apply(e2) - e2 * cl.eigvals.1).norm());
            json!({ "cbar": cbar, "cbar_sq": cbar * cbar, "kind": cl.kind, "eigvals": [cl.eigvals.0, cl.eigvals.1] })
        })
        .collect();
    let mut busemann_max = 0.0f64;
    for c in [-2.0, -0.5, 0.5, 1.0, 2.0] {
        for i in 0..n_grid {
            let x = -0.999 + 1.998 * i as f64 / (n_grid.max(2) - 1) as f64;
            let s = (1.0 - x * x).sqrt();
            busemann_max = busemann_max.max(busemann_ode_residual(x, c * s, -c * x / s)?.abs());
        }
    }
    let m = m.unwrap_or_else(UnitBall::circle);
    let combined = boundary_ode_deviation(&m, OdeKind::Combined, n_grid)?;
    let busemann = boundary_ode_deviation(&m, OdeKind::Busemann, n_grid)?;
    let (rmin, rmax) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    let summary = json!({
        "max_fit_residual": max_fit,
        "order_ratio_min": rmin,
        "order_ratio_max": rmax,
        "eigen_identity_max": eigen_max,
        "busemann_member_max_residual": busemann_max,
        "boundary_combined": combined,
        "boundary_busemann": busemann,
        "metric": max_fit,
    });
    let report = json!({
        "members": members,
        "classification": classes,
        "summary": summary,
    });
    Ok(Output {
        config: config(args, json!({
            "ball": m, "grid": n_grid, "members": ODE_MEMBERS, "span": ODE_SPAN,
            "step": ODE_STEP, "order_steps": ORDER_STEPS,
        })),
        summary,
        detail: Detail::Json(report),
        figure: None,
    })
}

fn reflect(args: &Args, m: UnitBall) -> Result<Output, CliError> {
    let n = args.samples.unwrap_or(100);
    let mut rng = Lcg64::new(args.seed);
    let mut t = Table::new(&[
        "index", "apex_x", "apex_y", "line_angle", "in_angle", "out_angle", "residual", "involution_err",
    ]);
    let (mut max_res, mut max_inv) = (0.0f64, 0.0f64);
    for i in 0..n {
        let a = Vec2::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        let line_angle = rng.uniform(0.0, PI);
        let line = Line::new(a, Vec2::from_angle(line_angle))?;
        let incoming = Ray::new(a, line.dir.rotated(rng.uniform(0.1, PI - 0.1)))?;
        let out = billiard_reflect(&m, &line, &incoming)?;
        let back = billiard_reflect(&m, &line, &out)?;
        let res = criticality_residual(&m, &line, a, a + incoming.dir, a + out.dir);
        let inv = (back.dir - incoming.dir).norm();
        max_res = max_res.max(res);
        max_inv = max_inv.max(inv);
        t.push(vec![
            i.to_string(),
            num(a.x),
            num(a.y),
            num(line_angle),
            num(incoming.dir.angle()),
            num(out.dir.angle()),
            num(res),
            num(inv),
        ]);
    }
    Ok(Output {
        config: config(args, json!({ "ball": m, "samples": n })),
        summary: json!({
            "samples": n,
            "max_residual": max_res,
            "max_involution_err": max_inv,
            "metric": max_res.max(max_inv),
        }),
        detail: Detail::Csv(t),
        figure: None,
    })
}

fn billiard(args: &Args, m: Option<UnitBall>, table: Option<PlacedBody>) -> Result<Output, CliError> {
    let table = match (table, &m) {
        (Some(t), _) => t,
        (None, Some(m)) => PlacedBody::unit(m.clone()),
        (None, None) => PlacedBody::unit(UnitBall::circle()),
    };
    let m = m.unwrap_or_else(|| table.ball.clone());
    let start = args.start.unwrap_or(table.center + Vec2::new(0.1, 0.05) * table.scale);
    let dir = args.dir.unwrap_or(Vec2::new(1.0, 0.37));
    let rec = trajectory(&table, &m, start, dir, args.bounces)?;
    let mut t = Table::new(&["bounce", "x", "y", "theta", "dir_x", "dir_y", "residual"]);
    for (i, ((h, d), r)) in rec.hits.iter().zip(&rec.directions).zip(&rec.residuals).enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            num(h.point.x),
            num(h.point.y),
            num(h.theta),
            num(d.x),
            num(d.y),
            num(*r),
        ]);
    }
    let max_res = fmax(rec.residuals.iter().copied());
    let mut f = Figure::new();
    f.polyline(&boundary(&table.ball, table.center, table.scale), "black", 1.5, true);
    let path: Vec<Vec2> = std::iter::once(rec.start).chain(rec.hits.iter().map(|h| h.point)).collect();
    f.polyline(&path, "#d62728", 0.8, false);
    f.dot(rec.start, 0.015 * table.scale, "#1f77b4");
    Ok(Output {
        config: config(args, json!({
            "ball": m, "body": table, "bounces": args.bounces, "start": start, "dir": dir,
        })),
        summary: json!({
            "bounces": rec.hits.len(),
            "aborted": rec.aborted,
            "max_residual": max_res,
            "metric": max_res,
        }),
        detail: Detail::Csv(t),
        figure: Some(f.render(600.0)),
    })
}

fn fagnano(args: &Args, m: UnitBall) -> Result<Output, CliError> {
    let n = args.samples.unwrap_or(200);
    let tris = sample_acute_triangles(n, args.seed, TRIANGLE_MIN_ANGLE);
    let results = collect(fagnano_scan(&m, &tris, Exec::default()))?;
    let stats = fagnano_stats(&results);
    let rows: Vec<Value> = tris
        .iter()
        .zip(&results)
        .enumerate()
        .map(|(i, (t, r))| json!({ "index": i, "vertices": t.vertices(), "max_residual": r }))
        .collect();
    let summary = serde_json::to_value(&stats).unwrap();
    let mut summary_obj = summary.clone();
    if let Value::Object(s) = &mut summary_obj {
        s.insert("metric".into(), json!(stats.residual_max));
    }
    Ok(Output {
        config: config(args, json!({ "ball": m, "samples": n, "min_angle": TRIANGLE_MIN_ANGLE })),
        summary: summary_obj,
        detail: Detail::Json(json!({ "stats": summary, "triangles": rows })),
        figure: None,
    })
}
