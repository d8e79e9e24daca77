//! Deterministic SVG drawings of circle sets.

use std::fmt::Write as _;

use crate::arrangement::{CircleSet, GhostCircle, Window};
use crate::circle::{ratio_f64, OrientedCircle};

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub window: Window,
    /// Width of the image in pixels; the height follows the window's aspect.
    pub width_px: f64,
    /// Colour circles by reduced curvature instead of plain black.
    pub color_by_curvature: bool,
    pub ghost: Option<GhostCircle>,
}

impl RenderSpec {
    pub fn new(window: Window) -> Self {
        RenderSpec { window, width_px: 1000.0, color_by_curvature: false, ghost: None }
    }
}

/// Formats with at most 9 significant digits and no trailing zeros.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
    root: f64,
}

impl Frame {
    /// Plane point (x, real y) to pixels, y pointing down.
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.x0) * self.scale, (self.y1 * self.root - y) * self.scale)
    }
}

fn palette(f: i128) -> &'static str {
    const COLOURS: [&str; 8] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf",
    ];
    COLOURS[(f.unsigned_abs() % COLOURS.len() as u128) as usize]
}

/// Endpoints of the part of a line inside the window, in plane
/// coordinates.
fn clip_line(c: &OrientedCircle, win: &Window, root: f64) -> Option<[(f64, f64); 2]> {
    let disc = c.disc();
    let tr = disc.trace_tau() as f64;
    let c1 = c.zeta.im_coeff() as f64;
    let c2 = (c.zeta * disc.tau().conj()).im_coeff() as f64;
    // L(x, y') = b' + c1 (x - tr y'/2) + c2 y'
    let (ax, ay, k) = (c1, c2 - c1 * tr / 2.0, c.cocurv as f64);
    let (x0, x1, y0, y1) = (
        ratio_f64(&win.x0),
        ratio_f64(&win.x1),
        ratio_f64(&win.y0),
        ratio_f64(&win.y1),
    );
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-12;
    if ay.abs() > eps {
        for x in [x0, x1] {
            let y = -(k + ax * x) / ay;
            if y >= y0 - eps && y <= y1 + eps {
                pts.push((x, y));
            }
        }
    }
    if ax.abs() > eps {
        for y in [y0, y1] {
            let x = -(k + ay * y) / ax;
            if x >= x0 - eps && x <= x1 + eps {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let (first, last) = (*pts.first()?, *pts.last()?);
    Some([(first.0, first.1 * root), (last.0, last.1 * root)])
}

/// Renders every member of `set`, clipped to the window.
pub fn render_svg(set: &CircleSet, spec: &RenderSpec) -> String {
    let disc = set.disc;
    let root = (-(disc.value() as f64)).sqrt() / 2.0;
    let win = &spec.window;
    let (x0, x1) = (ratio_f64(&win.x0), ratio_f64(&win.x1));
    let (y0, y1) = (ratio_f64(&win.y0), ratio_f64(&win.y1));
    let scale = spec.width_px / (x1 - x0);
    let height = (y1 - y0) * root * scale;
    let frame = Frame { x0, y1, scale, root };

    let mut out = String::new();
    let w = fmt_num(spec.width_px);
    let h = fmt_num(height);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"<defs><clipPath id="win"><rect x="0" y="0" width="{w}" height="{h}"/></clipPath></defs>"#)
        .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<g clip-path="url(#win)" fill="none">"#).unwrap();
    for c in set.iter() {
        let colour = if spec.color_by_curvature { palette(c.curv) } else { "black" };
        match (c.centre(), c.radius()) {
            (Some(centre), Some(r)) => {
                let (cx, cy) = centre.to_f64(disc);
                let (px, py) = frame.px(cx, cy);
                let pr = r * scale;
                let sw = (pr * 0.02).max(0.2);
                writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}" stroke="{colour}" stroke-width="{}"/>"#,
                    fmt_num(px),
                    fmt_num(py),
                    fmt_num(pr),
                    fmt_num(sw)
                )
                .unwrap();
            }
            _ => {
                if let Some([(ax, ay), (bx, by)]) = clip_line(c, win, root) {
                    let (p1, q1) = frame.px(ax, ay);
                    let (p2, q2) = frame.px(bx, by);
                    writeln!(
                        out,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="0.5"/>"#,
                        fmt_num(p1),
                        fmt_num(q1),
                        fmt_num(p2),
                        fmt_num(q2)
                    )
                    .unwrap();
                }
            }
        }
    }
    if let Some(g) = &spec.ghost {
        let (cx, cy) = g.centre_f64();
        let (px, py) = frame.px(cx, cy);
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" stroke="red" stroke-width="{}" stroke-dasharray="4 2"/>"#,
            fmt_num(px),
            fmt_num(py),
            fmt_num(g.radius() * scale),
            fmt_num((g.radius() * scale * 0.01).max(1.0))
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
