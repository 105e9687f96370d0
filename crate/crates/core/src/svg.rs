//! Standalone SVG drawing of a solved instance.

use std::fmt::Write;

use crate::geometry::Point;
use crate::solver::FullSteinerTree;

const SKELETON: &str = "#333333";
const EXTERNAL: &str = "#1f5fbf";
const HIGHLIGHT: &str = "#d62728";

/// Candidates as filled circles, terminals as open circles, skeleton edges
/// solid, external edges dashed, and every edge attaining the bottleneck in
/// red. The y axis points up.
pub fn render_svg(terminals: &[Point<f64>], steiner: &[Point<f64>], tree: &FullSteinerTree<f64>) -> String {
    let all = || terminals.iter().chain(steiner);
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in all() {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let span = (max_x - min_x).max(max_y - min_y);
    let span = if span > 0.0 { span } else { 1.0 };
    let margin = 0.05 * span;
    let radius = 0.012 * span;
    let stroke = 0.004 * span;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        min_x - margin,
        flip(max_y) - margin,
        max_x - min_x + 2.0 * margin,
        max_y - min_y + 2.0 * margin
    );

    let mut line = |a: Point<f64>, b: Point<f64>, colour: &str, width: f64, dashed: bool| {
        let dash = if dashed {
            format!(r#" stroke-dasharray="{} {}""#, 3.0 * stroke, 2.0 * stroke)
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="{width}"{dash}/>"#,
            a.x,
            flip(a.y),
            b.x,
            flip(b.y)
        );
    };
    for e in &tree.skeleton_edges {
        let hot = e.w == tree.bottleneck;
        line(
            steiner[e.u],
            steiner[e.v],
            if hot { HIGHLIGHT } else { SKELETON },
            if hot { 2.0 * stroke } else { stroke },
            false,
        );
    }
    for (t, a) in tree.external_edges.iter().enumerate() {
        let hot = a.w == tree.bottleneck;
        line(
            terminals[t],
            steiner[a.steiner],
            if hot { HIGHLIGHT } else { EXTERNAL },
            if hot { 2.0 * stroke } else { stroke },
            true,
        );
    }

    for s in steiner {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="{radius}" fill="{SKELETON}"/>"#,
            s.x,
            flip(s.y)
        );
    }
    for p in terminals {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="{radius}" fill="white" stroke="{EXTERNAL}" stroke-width="{stroke}"/>"#,
            p.x,
            flip(p.y)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Screen y grows downwards; `0.0 - y` avoids printing `-0`.
fn flip(y: f64) -> f64 {
    0.0 - y
}
