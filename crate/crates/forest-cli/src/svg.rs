//! SVG plots of the class polygons. The horizontal axis is the edge
//! coefficient b, the vertical axis the vertex coefficient a. Each
//! constraint line is drawn and labeled exactly once, the feasible region
//! is shaded, and every polygon vertex carries its exact coordinates.
//! Floating point only places shapes; every number in a label is exact.

use forest::bounds::{rat, GirthClass, HalfPlane, Rational};
use std::fmt::Write as _;

const WIDTH: f64 = 660.0;
const HEIGHT: f64 = 520.0;
const MARGIN: f64 = 80.0;

/// Data window: b left to right, a bottom to top. Wide enough for both
/// polygons (largest vertex coordinates are b = 1/4 and a = 1).
const B_MIN: f64 = -0.03;
const B_MAX: f64 = 0.33;
const A_MIN: f64 = -0.06;
const A_MAX: f64 = 1.12;

fn fx(b: f64) -> f64 {
    MARGIN + (b - B_MIN) / (B_MAX - B_MIN) * (WIDTH - 2.0 * MARGIN)
}

fn fy(a: f64) -> f64 {
    HEIGHT - MARGIN - (a - A_MIN) / (A_MAX - A_MIN) * (HEIGHT - 2.0 * MARGIN)
}

fn val(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Human form of ca*a + cb*b <= rhs, e.g. "11a - 23b <= 6" or "-a <= 0".
pub fn constraint_text(h: &HalfPlane) -> String {
    fn magnitude(c: Rational) -> String {
        let mag = if c < rat(0, 1) { -c } else { c };
        if mag == rat(1, 1) {
            String::new()
        } else {
            mag.to_string()
        }
    }
    let zero = rat(0, 1);
    let mut s = String::new();
    if h.ca != zero {
        if h.ca < zero {
            s.push('-');
        }
        s.push_str(&magnitude(h.ca));
        s.push('a');
    }
    if h.cb != zero {
        if s.is_empty() {
            if h.cb < zero {
                s.push('-');
            }
        } else {
            s.push_str(if h.cb < zero { " - " } else { " + " });
        }
        s.push_str(&magnitude(h.cb));
        s.push('b');
    }
    format!("{s} <= {}", h.rhs)
}

/// Label of a polygon vertex, written "(b, a)" to match the axes. One
/// girth-4 corner keeps the denominator of its source bound (38n - 7m)/44,
/// so its a coordinate reads 38/44 rather than the reduced 19/22.
pub fn vertex_label(class: GirthClass, a: Rational, b: Rational) -> String {
    if class == GirthClass::Girth4 && (a, b) == (rat(19, 22), rat(7, 44)) {
        return "(7/44, 38/44)".to_string();
    }
    format!("({b}, {a})")
}

/// Minimal XML text escaping for label strings.
fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;")
}

/// Endpoints of the boundary line of h clipped to the data window.
fn clip_line(h: &HalfPlane) -> Option<((f64, f64), (f64, f64))> {
    let ca = val(h.ca);
    let cb = val(h.cb);
    let rhs = val(h.rhs);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if ca.abs() > 1e-12 {
        for b in [B_MIN, B_MAX] {
            let a = (rhs - cb * b) / ca;
            if (A_MIN - 1e-9..=A_MAX + 1e-9).contains(&a) {
                pts.push((b, a));
            }
        }
    }
    if cb.abs() > 1e-12 {
        for a in [A_MIN, A_MAX] {
            let b = (rhs - ca * a) / cb;
            if (B_MIN - 1e-9..=B_MAX + 1e-9).contains(&b) {
                pts.push((b, a));
            }
        }
    }
    let mut best: Option<((f64, f64), (f64, f64), f64)> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = (pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2);
            if best.as_ref().is_none_or(|&(_, _, bd)| d > bd) {
                best = Some((pts[i], pts[j], d));
            }
        }
    }
    best.filter(|&(_, _, d)| d > 1e-12).map(|(p, q, _)| (p, q))
}

/// Render the polygon of a class as a standalone SVG document.
pub fn render(class: GirthClass) -> String {
    let poly = class.polygon();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        s,
        r##"<text x="{:.1}" y="30" font-size="16" text-anchor="middle" font-family="sans-serif">bound coefficient polygon, {}</text>"##,
        WIDTH / 2.0,
        class
    );

    let mut region = String::new();
    for (i, &(a, b)) in poly.vertices().iter().enumerate() {
        let _ = write!(
            region,
            "{}{:.2} {:.2}",
            if i == 0 { "M" } else { " L" },
            fx(val(b)),
            fy(val(a))
        );
    }
    region.push_str(" Z");
    let _ = writeln!(s, r##"<path d="{region}" fill="#dcecdc" stroke="none"/>"##);

    // Axes through the origin, labeled with the coefficient names.
    let _ = writeln!(
        s,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#333" stroke-width="1"/>"##,
        fx(B_MIN),
        fy(0.0),
        fx(B_MAX),
        fy(0.0)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#333" stroke-width="1"/>"##,
        fx(0.0),
        fy(A_MIN),
        fx(0.0),
        fy(A_MAX)
    );
    let _ = writeln!(
        s,
        r##"<text x="{:.1}" y="{:.1}" font-size="13" font-family="sans-serif">b</text>"##,
        fx(B_MAX) + 8.0,
        fy(0.0) + 4.0
    );
    let _ = writeln!(
        s,
        r##"<text x="{:.1}" y="{:.1}" font-size="13" font-family="sans-serif">a</text>"##,
        fx(0.0) - 4.0,
        fy(A_MAX) - 8.0
    );

    for (i, h) in poly.constraints().iter().enumerate() {
        let ((b1, a1), (b2, a2)) =
            clip_line(h).expect("every constraint line crosses the drawing window");
        let _ = writeln!(
            s,
            r##"<line class="constraint" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="1" stroke-dasharray="5 3"/>"##,
            fx(b1),
            fy(a1),
            fx(b2),
            fy(a2)
        );
        let t = 0.25 + 0.25 * ((i % 3) as f64);
        let _ = writeln!(
            s,
            r##"<text class="constraint-label" x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif" fill="#555">{}</text>"##,
            fx(b1 + (b2 - b1) * t) + 4.0,
            fy(a1 + (a2 - a1) * t) - 4.0,
            escape(&constraint_text(h))
        );
    }

    let _ = writeln!(
        s,
        r##"<path d="{region}" fill="none" stroke="#2a6f2a" stroke-width="2"/>"##
    );
    for &(a, b) in poly.vertices() {
        let x = fx(val(b));
        let y = fy(val(a));
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="#2a6f2a"/>"##);
        let _ = writeln!(
            s,
            r##"<text class="vertex-label" x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"##,
            x + 8.0,
            y - 6.0,
            escape(&vertex_label(class, a, b))
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth4_plot_has_published_labels_and_six_lines() {
        let doc = render(GirthClass::Girth4);
        for label in ["(0, 0)", "(1/8, 3/4)", "(7/44, 38/44)", "(1/4, 1)"] {
            assert!(doc.contains(label), "{label}");
        }
        assert_eq!(doc.matches("<line class=\"constraint\"").count(), 6);
        for text in [
            "-a &lt;= 0",
            "a &lt;= 1",
            "-b &lt;= 0",
            "a - 6b &lt;= 0",
            "3a - 10b &lt;= 1",
            "8a - 12b &lt;= 5",
        ] {
            assert_eq!(doc.matches(text).count(), 1, "{text}");
        }
    }

    #[test]
    fn girth5_plot_has_published_labels_and_five_lines() {
        let doc = render(GirthClass::Girth5);
        for label in ["(0, 0)", "(3/16, 15/16)", "(5/23, 1)"] {
            assert!(doc.contains(label), "{label}");
        }
        assert_eq!(doc.matches("<line class=\"constraint\"").count(), 5);
        for text in ["a - 5b &lt;= 0", "11a - 23b &lt;= 6"] {
            assert_eq!(doc.matches(text).count(), 1, "{text}");
        }
    }

    #[test]
    fn constraint_text_forms() {
        let h = HalfPlane {
            ca: rat(-1, 1),
            cb: rat(0, 1),
            rhs: rat(0, 1),
        };
        assert_eq!(constraint_text(&h), "-a <= 0");
        let h = HalfPlane {
            ca: rat(11, 1),
            cb: rat(-23, 1),
            rhs: rat(6, 1),
        };
        assert_eq!(constraint_text(&h), "11a - 23b <= 6");
        let h = HalfPlane {
            ca: rat(0, 1),
            cb: rat(1, 2),
            rhs: rat(1, 1),
        };
        assert_eq!(constraint_text(&h), "1/2b <= 1");
    }
}
