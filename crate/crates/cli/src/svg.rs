//! Schematic SVG figures.
//!
//! Geometry is computed exactly and converted to `f64` only for placement.
//! The sole square roots are the ones that place vertex C of the areal
//! triangle. Point markers are squares so that `<circle>` elements are
//! exactly the circles of the configuration.

use std::fmt::Write;

use miquel_core::areal::circle_center;
use miquel_core::cartesian::build_cartesian_figure;
use miquel_core::singular::build_figure;
use miquel_core::{ArealPoint, CartPoint, ExactRational, TriangleMetric};

use crate::document::{cartesian_config, singular_config};
use crate::{CliError, Mode, Outcome, Shared};

const MIN_CANVAS: u32 = 100;

type Q = ExactRational;
type Pt = (f64, f64);

/// Shortest decimal that round-trips the value rounded to 9 significant digits.
fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    if r == 0.0 {
        "0".into()
    } else {
        r.to_string()
    }
}

struct Circle {
    id: &'static str,
    center: Pt,
    radius: f64,
}

struct Scene {
    polygons: Vec<(&'static str, Vec<Pt>)>,
    segments: Vec<(&'static str, Pt, Pt)>,
    circles: Vec<Circle>,
    points: Vec<(&'static str, Pt)>,
}

fn dist(a: Pt, b: Pt) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// The pair of points furthest apart, so the drawn segment covers all three.
fn span(pts: [Pt; 3]) -> (Pt, Pt) {
    let pairs = [(pts[0], pts[1]), (pts[0], pts[2]), (pts[1], pts[2])];
    pairs
        .into_iter()
        .fold(None::<(Pt, Pt)>, |best, p| match best {
            Some(b) if dist(b.0, b.1) >= dist(p.0, p.1) => Some(b),
            _ => Some(p),
        })
        .expect("three pairs")
}

impl Scene {
    fn render(&self, size: u32) -> String {
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut grow = |p: Pt, r: f64| {
            lo = (lo.0.min(p.0 - r), lo.1.min(p.1 - r));
            hi = (hi.0.max(p.0 + r), hi.1.max(p.1 + r));
        };
        for c in &self.circles {
            grow(c.center, c.radius);
        }
        for (_, p) in &self.points {
            grow(*p, 0.0);
        }
        let side = f64::from(size);
        let margin = side * 0.06;
        let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(f64::MIN_POSITIVE);
        let scale = (side - 2.0 * margin) / extent;
        let off = (
            margin + ((side - 2.0 * margin) - (hi.0 - lo.0) * scale) / 2.0,
            margin + ((side - 2.0 * margin) - (hi.1 - lo.1) * scale) / 2.0,
        );
        // SVG's y axis points down.
        let map = |p: Pt| {
            (
                off.0 + (p.0 - lo.0) * scale,
                side - off.1 - (p.1 - lo.1) * scale,
            )
        };

        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(
            s,
            r#"  <rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#
        );
        let _ = writeln!(s, r#"  <g fill="none" stroke="black" stroke-width="1.5">"#);
        for (id, poly) in &self.polygons {
            let pts: Vec<String> = poly
                .iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{},{}", num(x), num(y))
                })
                .collect();
            let dash = if id.starts_with("triangle-ABC") {
                ""
            } else {
                r#" stroke-dasharray="6 4""#
            };
            let _ = writeln!(
                s,
                r#"    <polygon id="{id}" points="{}"{dash}/>"#,
                pts.join(" ")
            );
        }
        for (id, a, b) in &self.segments {
            let (a, b) = (map(*a), map(*b));
            let _ = writeln!(
                s,
                r#"    <line id="{id}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
                num(a.0),
                num(a.1),
                num(b.0),
                num(b.1)
            );
        }
        for c in &self.circles {
            let (x, y) = map(c.center);
            let _ = writeln!(
                s,
                r#"    <circle id="{}" cx="{}" cy="{}" r="{}"/>"#,
                c.id,
                num(x),
                num(y),
                num(c.radius * scale)
            );
        }
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(s, r#"  <g font-family="serif" font-size="16">"#);
        for (label, p) in &self.points {
            let (x, y) = map(*p);
            let _ = writeln!(
                s,
                r#"    <rect class="point" id="point-{label}" x="{}" y="{}" width="5" height="5"/>"#,
                num(x - 2.5),
                num(y - 2.5)
            );
            let _ = writeln!(
                s,
                r#"    <text class="label" x="{}" y="{}">{label}</text>"#,
                num(x + 5.0),
                num(y - 5.0)
            );
        }
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(s, "</svg>");
        s
    }
}

/// Plane positions of A, B, C from the squared side lengths.
fn place_vertices(m: &TriangleMetric<Q>) -> Result<[Pt; 3], CliError> {
    let (a2, b2, c2) = (m.a2.to_f64(), m.b2.to_f64(), m.c2.to_f64());
    let c = c2.sqrt();
    let cx = (b2 + c2 - a2) / (2.0 * c);
    let cy2 = b2 - cx * cx;
    // NaN fails this comparison too.
    if cy2.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !c.is_finite() {
        return Err(CliError::Invalid(
            "the metric does not describe a triangle".into(),
        ));
    }
    Ok([(0.0, 0.0), (c, 0.0), (cx, cy2.sqrt())])
}

fn to_plane(p: &ArealPoint<Q>, tri: &[Pt; 3], name: &str) -> Result<Pt, CliError> {
    let n = p
        .normalized()
        .map_err(|_| CliError::Invalid(format!("{name} is at infinity and cannot be drawn")))?;
    let (x, y, z) = (n.x.to_f64(), n.y.to_f64(), n.z.to_f64());
    Ok((
        x * tri[0].0 + y * tri[1].0 + z * tri[2].0,
        x * tri[0].1 + y * tri[1].1 + z * tri[2].1,
    ))
}

fn singular_scene(s: &Shared) -> Result<Scene, CliError> {
    let fig = build_figure(&singular_config(s)?)?;
    let tri = place_vertices(&fig.config.metric)?;
    let [a, b, c] = tri;
    let at = |p: &ArealPoint<Q>, name: &str| to_plane(p, &tri, name);
    let (p, q, r, sp) = (
        at(&fig.p, "P")?,
        at(&fig.q, "Q")?,
        at(&fig.r, "R")?,
        at(&fig.s, "S")?,
    );
    let u = at(&fig.center_u, "U")?;
    let v = at(&fig.center_v, "V")?;
    let d = at(&fig.center_d, "D")?;
    let e = at(&fig.center_e, "E")?;
    let f = at(&fig.center_f, "F")?;
    let k = at(
        &circle_center(&fig.center_circle),
        "the centre of circle DEF",
    )?;
    let circle = |id, center, through| Circle {
        id,
        center,
        radius: dist(center, through),
    };
    let asq = span([a, sp, q]);
    let bsr = span([b, sp, r]);
    Ok(Scene {
        polygons: vec![("triangle-ABC", vec![a, b, c])],
        segments: vec![("line-ASQ", asq.0, asq.1), ("line-BSR", bsr.0, bsr.1)],
        circles: vec![
            circle("circle-BCP", u, b),
            circle("circle-CAP", v, c),
            circle("circle-ARP", d, a),
            circle("circle-BPQ", e, b),
            circle("circle-CQR", f, c),
            circle("circle-centres", k, d),
        ],
        points: vec![
            ("A", a),
            ("B", b),
            ("C", c),
            ("P", p),
            ("Q", q),
            ("R", r),
            ("S", sp),
            ("U", u),
            ("V", v),
            ("D", d),
            ("E", e),
            ("F", f),
        ],
    })
}

fn cartesian_scene(s: &Shared) -> Result<Scene, CliError> {
    let (cfg, _) = cartesian_config(s)?;
    let fig = build_cartesian_figure(&cfg)?;
    let pt = |p: &CartPoint<Q>| (p.x.to_f64(), p.y.to_f64());
    let [a, b, c] = fig.vertices.each_ref().map(pt);
    let [p, q, r] = fig.side_points.each_ref().map(pt);
    let [d, e, f] = fig.centers.each_ref().map(pt);
    let sp = pt(&fig.miquel_point);
    let circle = |id, center: Pt, through: Pt| Circle {
        id,
        center,
        radius: dist(center, through),
    };
    Ok(Scene {
        polygons: vec![
            ("triangle-ABC", vec![a, b, c]),
            ("triangle-DEF", vec![d, e, f]),
        ],
        segments: Vec::new(),
        circles: vec![
            circle("circle-BPQ", e, b),
            circle("circle-CQR", f, c),
            circle("circle-ARP", d, a),
        ],
        points: vec![
            ("A", a),
            ("B", b),
            ("C", c),
            ("P", p),
            ("Q", q),
            ("R", r),
            ("D", d),
            ("E", e),
            ("F", f),
            ("S", sp),
        ],
    })
}

pub fn figure(s: &Shared, size: u32) -> Result<Outcome, CliError> {
    if size < MIN_CANVAS {
        return Err(CliError::Invalid(format!(
            "canvas must be at least {MIN_CANVAS} px, got {size}"
        )));
    }
    let scene = match s.mode {
        Mode::Areal => singular_scene(s)?,
        Mode::Cartesian | Mode::Bridge => cartesian_scene(s)?,
    };
    Ok(Outcome {
        text: scene.render(size),
        pass: true,
        failure: None,
    })
}
