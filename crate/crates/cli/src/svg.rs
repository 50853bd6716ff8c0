//! Minimal static SVG figures.

use std::fmt::Write;

use normplane::{UnitBall, Vec2};

pub const BOUNDARY_SEGMENTS: usize = 1024;

#[derive(Clone, Debug, Default)]
pub struct Figure {
    items: Vec<String>,
    lo: Option<(Vec2, Vec2)>,
}

fn pts_attr(pts: &[Vec2]) -> String {
    let mut s = String::new();
    for p in pts {
        let _ = write!(s, "{:.5},{:.5} ", p.x, p.y);
    }
    s.pop();
    s
}

impl Figure {
    pub fn new() -> Figure {
        Figure::default()
    }

    fn grow(&mut self, pts: &[Vec2]) {
        for &p in pts {
            let (lo, hi) = self.lo.get_or_insert((p, p));
            *lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            *hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
    }

    pub fn polyline(&mut self, pts: &[Vec2], stroke: &str, width: f64, closed: bool) {
        self.grow(pts);
        let tag = if closed { "polygon" } else { "polyline" };
        self.items.push(format!(
            r#"<{tag} points="{}" fill="none" stroke="{stroke}" stroke-width="{width}" vector-effect="non-scaling-stroke"/>"#,
            pts_attr(pts)
        ));
    }

    pub fn segment(&mut self, a: Vec2, b: Vec2, stroke: &str, width: f64) {
        self.polyline(&[a, b], stroke, width, false);
    }

    pub fn dot(&mut self, p: Vec2, r: f64, fill: &str) {
        self.grow(&[p]);
        self.items.push(format!(
            r#"<circle cx="{:.5}" cy="{:.5}" r="{r}" fill="{fill}"/>"#,
            p.x, p.y
        ));
    }

    /// Renders with the y axis pointing up, `px` pixels wide.
    pub fn render(&self, px: f64) -> String {
        let (lo, hi) = self.lo.unwrap_or((Vec2::new(-1.0, -1.0), Vec2::new(1.0, 1.0)));
        let pad = 0.05 * (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let (x0, y0) = (lo.x - pad, lo.y - pad);
        let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px:.0}" height="{:.0}" viewBox="{x0:.5} {:.5} {w:.5} {h:.5}">"#,
            px * h / w,
            -(y0 + h)
        );
        let _ = writeln!(s, r#"<rect x="{x0:.5}" y="{:.5}" width="{w:.5}" height="{h:.5}" fill="white"/>"#, -(y0 + h));
        s.push_str("<g transform=\"scale(1,-1)\">\n");
        for it in &self.items {
            s.push_str(it);
            s.push('\n');
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

/// Closed boundary polygon of `center + scale * m`.
pub fn boundary(m: &UnitBall, center: Vec2, scale: f64) -> Vec<Vec2> {
    (0..BOUNDARY_SEGMENTS)
        .map(|i| {
            let t = i as f64 * std::f64::consts::TAU / BOUNDARY_SEGMENTS as f64;
            center + m.boundary_at(t).point * scale
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_boundary() {
        let mut f = Figure::new();
        f.polyline(&boundary(&UnitBall::circle(), Vec2::ZERO, 1.0), "black", 1.0, true);
        let s = f.render(400.0);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        let pts = s.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(pts.split(' ').count(), BOUNDARY_SEGMENTS);
    }
}
