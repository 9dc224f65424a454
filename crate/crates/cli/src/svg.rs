//! Minimal scatter-plot SVG writer.

use std::fmt::Write as _;

/// Scatter plot of `points` in data coordinates.
///
/// The viewBox is the data bounding box grown by 5% on every side, so the
/// default `xMidYMid meet` keeps one data unit the same length on both axes.
/// The y axis is flipped so that up is positive.
pub fn scatter(points: &[(f64, f64)], title: &str) -> String {
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if points.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    // a flat extent (a single point, or all points on a line) still needs a box
    let span = (x1 - x0).max(y1 - y0);
    let span = if span > 0.0 { span } else { 1.0 };
    if x1 - x0 == 0.0 {
        x0 -= span / 2.0;
        x1 += span / 2.0;
    }
    if y1 - y0 == 0.0 {
        y0 -= span / 2.0;
        y1 += span / 2.0;
    }
    let (mx, my) = (0.05 * (x1 - x0), 0.05 * (y1 - y0));
    let (vx, vy) = (x0 - mx, -(y1 + my));
    let (vw, vh) = (x1 - x0 + 2.0 * mx, y1 - y0 + 2.0 * my);
    let width = 800.0;
    let height = (width * vh / vw).round().max(1.0);
    let r = 0.006 * vw.max(vh);
    let stroke = 0.002 * vw.max(vh);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="{vx} {vy} {vw} {vh}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r##"<g stroke="#999" stroke-width="{stroke}">"##);
    if vy < 0.0 && vy + vh > 0.0 {
        let _ = writeln!(s, r#"<line x1="{vx}" y1="0" x2="{}" y2="0"/>"#, vx + vw);
    }
    if vx < 0.0 && vx + vw > 0.0 {
        let _ = writeln!(s, r#"<line x1="0" y1="{vy}" x2="0" y2="{}"/>"#, vy + vh);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g class="markers" fill="#1f4e9e">"##);
    for &(x, y) in points {
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{}" r="{r}"/>"#, -y + 0.0);
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_per_point() {
        let svg = scatter(&[(0.0, 1.0), (2.0, -1.0), (1.0, 0.0)], "t");
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains(r#"viewBox="-0.1 -1.1 2.2 2.2""#), "{svg}");
        assert!(svg.contains(r#"cy="-1""#));
    }

    #[test]
    fn degenerate_extent() {
        let svg = scatter(&[(3.0, 0.0)], "a < b");
        assert!(svg.contains("viewBox=\"2.45 -0.55 1.1 1.1\""), "{svg}");
        assert!(svg.contains("a &lt; b"));
        let empty = scatter(&[], "none");
        assert_eq!(empty.matches("<circle").count(), 0);
    }
}
