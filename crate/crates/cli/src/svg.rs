//! Deterministic SVG output.

use std::fmt::Write;

use sweepcount_core::geom::{PointSet, Segment, SeparatingLine, SweepIndex};

pub struct RenderSpec<'a> {
    pub points: &'a PointSet,
    pub structure: &'a [Segment],
    pub path: &'a [usize],
    pub line: Option<SweepIndex>,
    pub width: u32,
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render(spec: &RenderSpec) -> String {
    let pts = spec.points.points();
    let (x0, x1) = pts.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.x), hi.max(p.x)));
    let (y0, y1) = pts.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.y), hi.max(p.y)));
    let (w, h) = ((x1 - x0) as f64, (y1 - y0) as f64);
    let size = w.max(h).max(1.0);
    let mx = if w > 0.0 { 0.05 * w } else { 0.05 * size };
    let my = if h > 0.0 { 0.05 * h } else { 0.05 * size };
    // SVG y grows downward, so every y is negated.
    let (vx, vy, vw, vh) = (x0 as f64 - mx, -(y1 as f64) - my, w + 2.0 * mx, h + 2.0 * my);
    let height = ((spec.width as f64) * vh / vw).round().max(1.0) as u32;
    let r = 0.012 * size;
    let thin = 0.004 * size;
    let thick = 0.012 * size;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        spec.width,
        height,
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    let seg = |out: &mut String, class: &str, stroke: &str, width: f64, a: (f64, f64), b: (f64, f64), extra: &str| {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{}"{extra}/>"#,
            num(a.0),
            num(-a.1),
            num(b.0),
            num(-b.1),
            num(width)
        );
    };
    let at = |v: usize| (pts[v].x as f64, pts[v].y as f64);

    if let Some(line) = spec.line {
        let sep = SeparatingLine::new(spec.points, line);
        let (ox, oy) = sep.approx_origin();
        let (dx, dy) = (sep.direction.0 as f64, sep.direction.1 as f64);
        let (ya, yb) = (y0 as f64 - my, y1 as f64 + my);
        let ta = (ya - oy) / dy;
        let tb = (yb - oy) / dy;
        let dash = format!(r#" stroke-dasharray="{} {}""#, num(3.0 * thin), num(3.0 * thin));
        seg(&mut out, "sweep", "#888888", thin, (ox + ta * dx, ya), (ox + tb * dx, yb), &dash);
    }
    for e in spec.structure {
        seg(&mut out, "edge", "#4060a0", thin, at(e.a), at(e.b), "");
    }
    for w in spec.path.windows(2) {
        seg(&mut out, "path", "#c03020", thick, at(w[0]), at(w[1]), "");
    }
    for (k, p) in pts.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle id="v{k}" cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(p.x as f64),
            num(-(p.y as f64)),
            num(r)
        );
    }
    out.push_str("</svg>\n");
    out
}
