//! SVG renderings of Newton diagrams and face-link braids.

use std::fmt::Write as _;

use crate::links::LinkComponent;
use crate::newton::Diagram;

const W: f64 = 480.0;
const H: f64 = 480.0;
const M: f64 = 40.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn header(s: &mut String, title: &str) {
    let _ = writeln!(s, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"##);
    let _ = writeln!(s, "<title>{title}</title>");
    let _ = writeln!(s, r##"<rect width="{W}" height="{H}" fill="white"/>"##);
}

fn polyline(s: &mut String, pts: &[(f64, f64)], color: &str, dash: bool) {
    let p: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let dash = if dash { r##" stroke-dasharray="6 4""## } else { "" };
    let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"##, p.join(" "));
}

/// Support points, the Newton boundary and (dashed) Γ_inn.
pub fn newton_svg(support: &[[i64; 2]], gamma: &Diagram, gamma_inn: Option<&Diagram>) -> String {
    let q = |x: &num_rational::Rational64| *x.numer() as f64 / *x.denom() as f64;
    let mut xmax = support.iter().map(|p| p[0]).max().unwrap_or(1).max(1) as f64;
    let mut ymax = support.iter().map(|p| p[1]).max().unwrap_or(1).max(1) as f64;
    for d in std::iter::once(gamma).chain(gamma_inn) {
        for v in &d.vertices {
            xmax = xmax.max(q(&v.0));
            ymax = ymax.max(q(&v.1));
        }
    }
    let unit = ((W - 2.0 * M) / xmax).min((H - 2.0 * M) / ymax);
    let tx = |x: f64| M + x * unit;
    let ty = |y: f64| H - M - y * unit;
    let mut s = String::new();
    header(&mut s, "Newton polygon");
    let _ = writeln!(s, r##"<g stroke="#bbb" stroke-width="1">"##);
    let _ = writeln!(s, r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"##, tx(0.0), ty(0.0), tx(xmax), ty(0.0));
    let _ = writeln!(s, r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"##, tx(0.0), ty(0.0), tx(0.0), ty(ymax));
    let _ = writeln!(s, "</g>");
    let chain = |d: &Diagram| d.vertices.iter().map(|v| (tx(q(&v.0)), ty(q(&v.1)))).collect::<Vec<_>>();
    if gamma.vertices.len() > 1 {
        polyline(&mut s, &chain(gamma), "#333", false);
    }
    if let Some(gi) = gamma_inn {
        if gi.vertices.len() > 1 {
            polyline(&mut s, &chain(gi), COLORS[1], true);
        }
    }
    for p in support {
        let (x, y) = (tx(p[0] as f64), ty(p[1] as f64));
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{}"/>"##, COLORS[0]);
        let _ = writeln!(s, r##"<text x="{:.3}" y="{:.3}" font-size="11" font-family="sans-serif">({},{})</text>"##, x + 6.0, y - 6.0, p[0], p[1]);
    }
    s.push_str("</svg>\n");
    s
}

/// Strands of a face link over the base circle: base angle horizontally,
/// `Re z` vertically, one colour per component.
pub fn braid_svg(components: &[LinkComponent], title: &str) -> String {
    let two_pi = std::f64::consts::TAU;
    let ext = components
        .iter()
        .flat_map(|c| c.samples.iter().map(|s| s.pos[0].abs()))
        .fold(0.0_f64, f64::max)
        .max(1e-9)
        * 1.1;
    let tx = |a: f64| M + a.rem_euclid(two_pi) / two_pi * (W - 2.0 * M);
    let ty = |y: f64| H / 2.0 - y / ext * (H / 2.0 - M);
    let mut s = String::new();
    header(&mut s, title);
    let _ = writeln!(s, r##"<g stroke="#bbb" stroke-width="1"><line x1="{M}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/></g>"##, H / 2.0, W - M, H / 2.0);
    for (j, c) in components.iter().enumerate() {
        let color = COLORS[j % COLORS.len()];
        let n = c.samples.len();
        if n == 0 {
            continue;
        }
        // split where the base angle wraps around
        let mut run: Vec<(f64, f64)> = Vec::new();
        for m in 0..=n {
            let smp = &c.samples[m % n];
            let p = (tx(smp.angle), ty(smp.pos[0]));
            if let Some(&(x0, _)) = run.last() {
                if (p.0 - x0).abs() > (W - 2.0 * M) / 2.0 {
                    if run.len() > 1 {
                        polyline(&mut s, &run, color, false);
                    } else {
                        let _ = writeln!(s, r##"<circle cx="{:.3}" cy="{:.3}" r="2" fill="{color}"/>"##, run[0].0, run[0].1);
                    }
                    run.clear();
                }
            }
            run.push(p);
        }
        if run.len() > 1 {
            polyline(&mut s, &run, color, false);
        }
    }
    s.push_str("</svg>\n");
    s
}
