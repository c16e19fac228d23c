//! SVG figures: container, disks (rattlers left white), bond dots, indices.

use std::fmt::Write as _;

use crate::format::PackingFile;
use crate::geometry::{Vec2, SQRT3};
use crate::refine::BondKind;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Drawing width in pixels, excluding margins.
    pub width: f64,
    pub margin: f64,
    pub show_indices: bool,
    pub caption: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { width: 600.0, margin: 20.0, show_indices: true, caption: true }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    // Avoid "-0.000".
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".into()
    } else {
        s
    }
}

pub fn render_svg(f: &PackingFile, opts: &RenderOptions) -> String {
    let p = &f.packing;
    let r = p.d / 2.0;
    // The container is the unit center triangle pushed out by r on every side.
    let side = 1.0 + SQRT3 * p.d;
    let origin = Vec2::new(-SQRT3 * r, -r);
    let scale = opts.width / side;
    let height = side * SQRT3 / 2.0 * scale;
    let caption_h = if opts.caption { 30.0 } else { 0.0 };
    let total_w = opts.width + 2.0 * opts.margin;
    let total_h = height + 2.0 * opts.margin + caption_h;
    let map = |q: Vec2| -> (String, String) {
        let x = opts.margin + (q.x - origin.x) * scale;
        let y = opts.margin + height - (q.y - origin.y) * scale;
        (num(x), num(y))
    };

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(total_w),
        num(total_h),
        num(total_w),
        num(total_h)
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);

    let corners = [origin, origin + Vec2::new(side, 0.0), origin + Vec2::new(side / 2.0, side * SQRT3 / 2.0)];
    let pts: Vec<String> = corners.iter().map(|&c| {
        let (x, y) = map(c);
        format!("{x},{y}")
    }).collect();
    let _ = writeln!(s, r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##, pts.join(" "));

    let _ = writeln!(s, r##"<g id="disks" stroke="#000000" stroke-width="0.8">"##);
    for (i, &c) in p.centers.iter().enumerate() {
        let (x, y) = map(c);
        let fill = if p.rattlers.contains(&i) { "#ffffff" } else { "#c8c8c8" };
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{}" fill="{fill}"/>"#, num(r * scale));
    }
    let _ = writeln!(s, "</g>");

    let dot = num((r * scale * 0.12).clamp(1.5, 4.0));
    let _ = writeln!(s, r##"<g id="bonds" fill="#000000">"##);
    for b in &f.bonds {
        let at = match *b {
            BondKind::Pair(i, j) => (p.centers[i] + p.centers[j]) * 0.5,
            BondKind::Wall(i, w) => p.centers[i] - w.inward_normal() * r,
        };
        let (x, y) = map(at);
        let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="{dot}"/>"#);
    }
    let _ = writeln!(s, "</g>");

    if opts.show_indices {
        let size = num((r * scale * 0.7).clamp(6.0, 16.0));
        let _ = writeln!(
            s,
            r##"<g id="indices" font-family="sans-serif" font-size="{size}" text-anchor="middle" dominant-baseline="central" fill="#000000">"##
        );
        for (i, &c) in p.centers.iter().enumerate() {
            let (x, y) = map(c);
            let _ = writeln!(s, r#"<text x="{x}" y="{y}">{i}</text>"#);
        }
        let _ = writeln!(s, "</g>");
    }

    if opts.caption {
        let label = if p.label.is_empty() { format!("n = {}", p.n()) } else { p.label.clone() };
        let text = format!("{label}   d = {:.15}   bonds = {}", p.d, f.bonds.len());
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" fill="#000000">{}</text>"##,
            num(total_w / 2.0),
            num(total_h - 10.0),
            escape(&text)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
