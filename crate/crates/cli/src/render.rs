use std::f64::consts::PI;
use std::fmt::Write;

use num_traits::ToPrimitive;
use toric_horo::exactla::QVector;
use toric_horo::fan::Fan;
use toric_horo::polytope::Polytope;

const SIZE: f64 = 480.0;

fn point(v: &QVector) -> (f64, f64) {
    (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0))
}

fn angle(p: (f64, f64)) -> f64 {
    p.1.atan2(p.0).rem_euclid(2.0 * PI)
}

/// Vertices in counterclockwise order around the origin.
fn outline(p: &Polytope) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = p.vertices().iter().map(point).collect();
    pts.sort_by(|a, b| angle(*a).total_cmp(&angle(*b)));
    pts
}

/// SVG with `P`, its polar and the fan of `P`; planar inputs only.
pub fn svg(p: &Polytope, polar: &Polytope, fan: &Fan) -> String {
    let outer = outline(p);
    let inner = outline(polar);
    let extent = outer
        .iter()
        .chain(&inner)
        .map(|(x, y)| x.abs().max(y.abs()))
        .fold(1.0, f64::max)
        * 1.25;
    let scale = SIZE / (2.0 * extent);
    let map = |(x, y): (f64, f64)| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let polygon = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|&q| {
                let (x, y) = map(q);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#dbe8f5" stroke="#1f4e79" stroke-width="2"/>"##,
        polygon(&outer)
    );
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="none" stroke="#a33" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
        polygon(&inner)
    );
    for cone in fan.cones().iter().filter(|c| c.dim() == 1) {
        let (dx, dy) = point(&cone.rays()[0]);
        let len = (dx * dx + dy * dy).sqrt();
        let reach = extent * 1.5 / len;
        let (x0, y0) = map((0.0, 0.0));
        let (x1, y1) = map((dx * reach, dy * reach));
        let _ = writeln!(
            out,
            r##"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="#333" stroke-width="1"/>"##
        );
        let (lx, ly) = map((dx * extent * 0.9 / len, dy * extent * 0.9 / len));
        let _ = writeln!(
            out,
            r#"<text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="12">σ{} {}</text>"#,
            cone.id, cone.rays()[0]
        );
    }
    for cone in fan.cones().iter().filter(|c| c.dim() == 2) {
        let mid = cone.rays().iter().fold((0.0, 0.0), |acc, r| {
            let (x, y) = point(r);
            let len = (x * x + y * y).sqrt();
            (acc.0 + x / len, acc.1 + y / len)
        });
        let len = (mid.0 * mid.0 + mid.1 * mid.1).sqrt().max(1e-9);
        let (lx, ly) = map((mid.0 / len * extent * 0.7, mid.1 / len * extent * 0.7));
        let _ = writeln!(
            out,
            r##"<text x="{lx:.2}" y="{ly:.2}" font-family="sans-serif" font-size="12" fill="#555">σ{}</text>"##,
            cone.id
        );
    }
    let (ox, oy) = map((0.0, 0.0));
    let _ = writeln!(out, r#"<circle cx="{ox:.2}" cy="{oy:.2}" r="3" fill="black"/>"#);
    out.push_str("</svg>\n");
    out
}
