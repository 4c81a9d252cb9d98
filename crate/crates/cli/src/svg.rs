//! Static SVG rendering of a Newton polygon (solid) over a Hodge polygon
//! (dashed). Output depends only on the vertex lists.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use polspec::exactnum::{format_rational, parse_rational};
use polspec::polygons::PolygonJson;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 48.0;
const MAX_DOTS: usize = 2500;

fn points(p: &PolygonJson) -> Vec<(usize, BigRational)> {
    p.vertices
        .iter()
        .map(|(x, y)| (*x, parse_rational(y).expect("serialized polygons are well formed")))
        .collect()
}

struct Frame {
    x_max: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + x / self.x_max * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - y / self.y_max * (HEIGHT - 2.0 * MARGIN)
    }
}

fn polyline(out: &mut String, frame: &Frame, pts: &[(usize, BigRational)], class: &str, dash: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|(x, y)| format!("{:.2},{:.2}", frame.px(*x as f64), frame.py(y.to_f64().unwrap_or(0.0))))
        .collect();
    let _ = writeln!(
        out,
        r#"  <polyline class="{class}" points="{}" fill="none" stroke="{}" stroke-width="2"{dash}/>"#,
        coords.join(" "),
        if class == "newton" { "#1f4e9c" } else { "#b5462b" }
    );
}

fn labels(out: &mut String, frame: &Frame, pts: &[(usize, BigRational)], class: &str, dy: f64) {
    for (x, y) in pts {
        let _ = writeln!(
            out,
            r#"  <text class="{class}-vertex" x="{:.2}" y="{:.2}" font-size="11">({x}, {})</text>"#,
            frame.px(*x as f64) + 4.0,
            frame.py(y.to_f64().unwrap_or(0.0)) + dy,
            format_rational(y)
        );
    }
    for w in pts.windows(2) {
        let run = BigRational::from_integer((w[1].0 - w[0].0).into());
        let slope = (&w[1].1 - &w[0].1) / run;
        let mx = (w[0].0 + w[1].0) as f64 / 2.0;
        let my = ((&w[0].1 + &w[1].1) / BigRational::from_integer(2.into())).to_f64().unwrap_or(0.0);
        let _ = writeln!(
            out,
            r#"  <text class="{class}-slope" x="{:.2}" y="{:.2}" font-size="10" font-style="italic">slope {}</text>"#,
            frame.px(mx) + 4.0,
            frame.py(my) + dy + 12.0,
            format_rational(&slope)
        );
    }
}

pub fn render(newton: &PolygonJson, hodge: Option<&PolygonJson>, title: &str) -> String {
    let np = points(newton);
    let hp = hodge.map(points).unwrap_or_default();
    let x_max = np.iter().chain(&hp).map(|(x, _)| *x).max().unwrap_or(1).max(1);
    let y_top = np
        .iter()
        .chain(&hp)
        .map(|(_, y)| y.to_f64().unwrap_or(0.0))
        .fold(1.0f64, f64::max)
        .ceil();
    let frame = Frame { x_max: x_max as f64, y_max: y_top };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"  <title>{title}</title>"#);
    let _ = writeln!(out, r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##);

    let y_cells = y_top as usize;
    if (x_max + 1) * (y_cells + 1) <= MAX_DOTS {
        for x in 0..=x_max {
            for y in 0..=y_cells {
                let _ = writeln!(
                    out,
                    r##"  <circle cx="{:.2}" cy="{:.2}" r="1.5" fill="#9a9a9a"/>"##,
                    frame.px(x as f64),
                    frame.py(y as f64)
                );
            }
        }
    }
    let (ox, oy) = (frame.px(0.0), frame.py(0.0));
    let _ = writeln!(
        out,
        r##"  <line class="axis" x1="{ox:.2}" y1="{oy:.2}" x2="{:.2}" y2="{oy:.2}" stroke="#000000"/>"##,
        frame.px(x_max as f64)
    );
    let _ = writeln!(
        out,
        r##"  <line class="axis" x1="{ox:.2}" y1="{oy:.2}" x2="{ox:.2}" y2="{:.2}" stroke="#000000"/>"##,
        frame.py(y_top)
    );
    let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="11">{x_max}</text>"#, frame.px(x_max as f64) - 4.0, oy + 16.0);
    let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}" font-size="11">{y_top}</text>"#, ox - 20.0, frame.py(y_top) + 4.0);

    if !hp.is_empty() {
        polyline(&mut out, &frame, &hp, "hodge", r#" stroke-dasharray="6 4""#);
        labels(&mut out, &frame, &hp, "hodge", 14.0);
    }
    polyline(&mut out, &frame, &np, "newton", "");
    labels(&mut out, &frame, &np, "newton", -6.0);

    let _ = writeln!(out, r#"  <text x="{MARGIN}" y="20" font-size="12">{title}: Newton (solid), Hodge (dashed)</text>"#);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(usize, &str)]) -> PolygonJson {
        PolygonJson { vertices: v.iter().map(|(x, y)| (*x, y.to_string())).collect() }
    }

    #[test]
    fn deterministic_and_labelled() {
        let np = poly(&[(0, "0"), (4, "2")]);
        let hp = poly(&[(0, "0"), (2, "0"), (4, "2")]);
        let a = render(&np, Some(&hp), "H^1, prime 2");
        assert_eq!(a, render(&np, Some(&hp), "H^1, prime 2"));
        assert!(a.contains(r#"class="newton""#) && a.contains(r#"class="hodge""#));
        assert!(a.contains("stroke-dasharray"));
        assert!(a.contains("slope 1/2") && a.contains("(2, 0)"));
    }

    #[test]
    fn rational_vertices() {
        let np = poly(&[(0, "0"), (3, "1/2")]);
        let s = render(&np, None, "t");
        assert!(s.contains("(3, 1/2)") && s.contains("slope 1/6"));
        assert!(!s.contains(r#"class="hodge""#));
    }
}
