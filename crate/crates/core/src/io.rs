//! Point files, JSON views of hull snapshots, and SVG drawings.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fitting::FitResult;
use crate::geom::Point;
use crate::hull::{area_of, perimeter_of, HullSnapshot, StaircaseKind};

/// One `x,y` pair per line; blank lines and lines starting with `#` are
/// skipped. Line numbers in errors start at 1.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: i + 1, msg };
        let mut fields = line.split(',');
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(bad(format!("expected \"x,y\", got {line:?}")));
        };
        let num = |s: &str| -> Result<f64> {
            match s.trim().parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(bad(format!("not a finite number: {:?}", s.trim()))),
            }
        };
        out.push(Point::new(num(x)?, num(y)?));
    }
    if out.is_empty() {
        return Err(Error::Empty);
    }
    Ok(out)
}

pub fn read_points(path: impl AsRef<Path>) -> Result<Vec<Point>> {
    parse_points(&std::fs::read_to_string(path)?)
}

/// Inverse of `parse_points`; shortest representations that read back
/// to the same values.
pub fn write_points(points: &[Point]) -> String {
    let mut s = String::new();
    for p in points {
        let _ = writeln!(s, "{:?},{:?}", p.x, p.y);
    }
    s
}

/// `{beta, staircases: {tr, tl, br, bl}, overlaps, area, perimeter}` plus the
/// perimeter with antennas. Staircases are point indices by ascending y.
pub fn snapshot_json(snap: &HullSnapshot) -> Value {
    let mut stairs = serde_json::Map::new();
    for k in StaircaseKind::ALL {
        stairs.insert(k.name().to_string(), json!(snap.staircase(k).vertices));
    }
    let overlaps: Vec<Value> = snap
        .overlaps
        .iter()
        .map(|r| {
            let c = r.corners(&snap.points, snap.beta);
            json!({
                "pair": r.pair,
                "first": r.first,
                "second": r.second,
                "corners": c.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "beta": snap.beta,
        "staircases": stairs,
        "overlaps": overlaps,
        "area": area_of(snap),
        "perimeter": perimeter_of(snap, false),
        "perimeter_with_antennas": perimeter_of(snap, true),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Show {
    pub points: bool,
    pub staircases: bool,
    pub overlaps: bool,
    pub polygon: bool,
    pub antennas: bool,
    pub chain: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub show: Show,
    pub point_fill: String,
    /// Stroke per staircase, in `StaircaseKind::ALL` order.
    pub staircase_stroke: [String; 4],
    pub overlap_stroke: String,
    pub polygon_fill: String,
    pub antenna_stroke: String,
    pub chain_stroke: String,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 640,
            height: 480,
            show: Show {
                points: true,
                staircases: true,
                overlaps: true,
                polygon: false,
                antennas: false,
                chain: true,
            },
            point_fill: "#222".into(),
            staircase_stroke: ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"].map(String::from),
            overlap_stroke: "#ff7f0e".into(),
            polygon_fill: "#dddddd".into(),
            antenna_stroke: "#8c564b".into(),
            chain_stroke: "#e377c2".into(),
        }
    }
}

/// Antenna segments as `(extreme point, far end)`.
fn antenna_segments(snap: &HullSnapshot) -> Vec<(Point, Point)> {
    use StaircaseKind::*;
    let st = |k: StaircaseKind| &snap.staircase(k).vertices;
    let first = |k| {
        let v = st(k);
        (v.len() >= 2).then(|| (v[0], snap.step_corner(k, v[0], v[1])))
    };
    let last = |k| {
        let v = st(k);
        let n = v.len();
        (n >= 2).then(|| (v[n - 1], snap.step_corner(k, v[n - 2], v[n - 1])))
    };
    let pairs = [
        (first(TR), last(BR)),
        (last(TR), last(TL)),
        (first(TL), last(BL)),
        (first(BL), first(BR)),
    ];
    let mut out = Vec::new();
    for (a, b) in pairs {
        let (Some((p, ca)), Some((_, cb))) = (a, b) else { continue };
        let o = snap.points[p];
        let len = o.dist(ca).min(o.dist(cb));
        let d = o.dist(ca);
        if len > 0.0 && d > 0.0 {
            let t = len / d;
            out.push((o, Point::new(o.x + t * (ca.x - o.x), o.y + t * (ca.y - o.y))));
        }
    }
    out
}

/// Maps plane coordinates into the picture with y pointing up.
struct Frame {
    x0: f64,
    y0: f64,
    scale: f64,
    pad: f64,
    height: f64,
    xmin: f64,
    xmax: f64,
}

impl Frame {
    fn new(points: &[Point], spec: &RenderSpec) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let pad = 20.0;
        let (w, h) = (spec.width as f64 - 2.0 * pad, spec.height as f64 - 2.0 * pad);
        let (dx, dy) = ((x1 - x0).max(1e-12), (y1 - y0).max(1e-12));
        let scale = (w / dx).min(h / dy);
        // centre the drawing
        let x0 = x0 - 0.5 * (w / scale - dx);
        let y0 = y0 - 0.5 * (h / scale - dy);
        Frame {
            x0,
            y0,
            scale,
            pad,
            height: spec.height as f64,
            xmin: x0 - pad / scale,
            xmax: x0 + (spec.width as f64 - pad) / scale,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let x = self.pad + (p.x - self.x0) * self.scale;
        let y = self.height - self.pad - (p.y - self.y0) * self.scale;
        (round2(x), round2(y))
    }

    fn pts(&self, ps: &[Point]) -> String {
        ps.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

/// SVG 1.1 drawing of the snapshot: point markers, the four staircases
/// with their slanted steps, overlap regions as dashed outlines, and
/// optionally the polygon, the antennas and a fitted chain.
pub fn render_svg(snap: &HullSnapshot, spec: &RenderSpec, fit: Option<&FitResult>) -> String {
    let pts = &snap.points;
    let mut bounds: Vec<Point> = pts.to_vec();
    if let (Some(f), true) = (fit, spec.show.chain) {
        bounds.push(f.chain.joint_left);
        bounds.push(f.chain.joint_right);
    }
    let fr = Frame::new(&bounds, spec);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = spec.width,
        h = spec.height
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if spec.show.polygon {
        let poly = snap.polygon();
        if poly.len() >= 3 {
            let _ = writeln!(
                s,
                r#"<polygon class="polygon" points="{}" fill="{}" stroke="none"/>"#,
                fr.pts(&poly),
                spec.polygon_fill
            );
        }
    }
    if spec.show.overlaps {
        for r in &snap.overlaps {
            let c = r.corners(pts, snap.beta);
            let mut d = String::new();
            for (i, &p) in c.iter().enumerate() {
                let (x, y) = fr.map(p);
                let _ = write!(d, "{}{x},{y} ", if i == 0 { "M" } else { "L" });
            }
            d.push('Z');
            let _ = writeln!(
                s,
                r#"<path class="overlap {}" d="{d}" fill="none" stroke="{}" stroke-dasharray="6,4"/>"#,
                r.pair.name().replace('/', "-"),
                spec.overlap_stroke
            );
        }
    }
    if spec.show.staircases {
        for (k, color) in StaircaseKind::ALL.iter().zip(&spec.staircase_stroke) {
            let v = &snap.staircase(*k).vertices;
            if v.len() < 2 {
                continue;
            }
            let mut line = vec![pts[v[0]]];
            for w in v.windows(2) {
                line.push(snap.step_corner(*k, w[0], w[1]));
                line.push(pts[w[1]]);
            }
            let _ = writeln!(
                s,
                r#"<polyline class="staircase {}" points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                k.name(),
                fr.pts(&line)
            );
        }
    }
    if spec.show.antennas {
        for (a, b) in antenna_segments(snap) {
            let ((x1, y1), (x2, y2)) = (fr.map(a), fr.map(b));
            let _ = writeln!(
                s,
                r#"<line class="antenna" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}" stroke-width="3"/>"#,
                spec.antenna_stroke
            );
        }
    }
    if let (Some(f), true) = (fit, spec.show.chain) {
        let c = &f.chain;
        let (jl, jr) = (c.joint_left, c.joint_right);
        let left = Point::new(fr.xmin.min(jl.x), c.y_left);
        let right = Point::new(fr.xmax.max(jr.x), c.y_right);
        let _ = writeln!(
            s,
            r#"<polyline class="chain" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            fr.pts(&[left, jl, jr, right]),
            spec.chain_stroke
        );
    }
    if spec.show.points {
        for &p in pts.iter() {
            let (x, y) = fr.map(p);
            let _ = writeln!(
                s,
                r#"<circle class="point" cx="{x}" cy="{y}" r="3" fill="{}"/>"#,
                spec.point_fill
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::fit_fixed;
    use crate::geom::Angle;
    use crate::hull::hull_fixed;

    fn four() -> Vec<Point> {
        parse_points("0,0\n3,1\n4,4\n1,3\n").unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_points("0,0\n1,1\n").unwrap(), vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)]);
        assert_eq!(parse_points("# header\n2.5,3.5\n").unwrap(), vec![Point::new(2.5, 3.5)]);
        assert!(matches!(parse_points("abc\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("0,0\n\n1,x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_points("1,2,3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("1,inf\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("# only\n"), Err(Error::Empty)));
        assert_eq!(parse_points(" 1 , -2e3 \r\n").unwrap(), vec![Point::new(1.0, -2000.0)]);
    }

    #[test]
    fn round_trip() {
        let p = crate::oracle::gen_random(200, 3);
        let mut q = p.clone();
        q.push(Point::new(1e-300, -123456789.12345679));
        q.push(Point::new(0.1 + 0.2, f64::MAX));
        assert_eq!(parse_points(&write_points(&q)).unwrap(), q);
    }

    #[test]
    fn snapshot_keys() {
        let v = snapshot_json(&hull_fixed(&four(), Angle::RIGHT).unwrap());
        for k in ["beta", "staircases", "overlaps", "area", "perimeter"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        for k in ["tr", "tl", "br", "bl"] {
            assert!(v["staircases"][k].is_array());
        }
        assert!((v["area"].as_f64().unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(v["overlaps"].as_array().unwrap().len(), 2);
    }

    fn count(svg: &str, pat: &str) -> usize {
        svg.matches(pat).count()
    }

    #[test]
    fn svg_four_points() {
        let snap = hull_fixed(&four(), Angle::RIGHT).unwrap();
        let svg = render_svg(&snap, &RenderSpec::default(), None);
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(count(&svg, "stroke-dasharray"), snap.overlaps.len());
        assert_eq!(count(&svg, "<path"), 2);
        assert_eq!(count(&svg, "<circle"), 4);
        let drawn = snap.staircases.iter().filter(|s| s.vertices.len() >= 2).count();
        assert_eq!(count(&svg, "<polyline"), drawn);
    }

    #[test]
    fn svg_singleton() {
        let p = [Point::new(1.0, 2.0)];
        let snap = hull_fixed(&p, Angle::new(1.0).unwrap()).unwrap();
        let mut spec = RenderSpec::default();
        spec.show.polygon = true;
        spec.show.antennas = true;
        let svg = render_svg(&snap, &spec, None);
        assert_eq!(count(&svg, "<circle"), 1);
        for tag in ["<path", "<polyline", "<polygon", "<line"] {
            assert_eq!(count(&svg, tag), 0, "{tag}");
        }
    }

    #[test]
    fn svg_with_fit() {
        let p = four();
        let snap = hull_fixed(&p, Angle::RIGHT).unwrap();
        let f = fit_fixed(&p, Angle::RIGHT).unwrap();
        let plain = render_svg(&snap, &RenderSpec::default(), None);
        let svg = render_svg(&snap, &RenderSpec::default(), Some(&f));
        assert_eq!(count(&svg, "<polyline"), count(&plain, "<polyline") + 1);
        let chain = svg.lines().find(|l| l.contains("class=\"chain\"")).unwrap();
        let pts = chain.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(pts.split(' ').count(), 4);
    }

    #[test]
    fn svg_antennas() {
        let p = crate::oracle::gen_random(12, 8);
        let snap = hull_fixed(&p, Angle::new(0.9).unwrap()).unwrap();
        let mut spec = RenderSpec::default();
        spec.show.antennas = true;
        let svg = render_svg(&snap, &spec, None);
        let n = snap.antennas().iter().filter(|a| a.1 > 0.0).count();
        assert_eq!(count(&svg, "<line"), n);
    }
}
