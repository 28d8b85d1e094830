//! SVG drawings of real equilibrium configurations.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use compliant_core::model::pose_from;
use compliant_core::{AnalysisReport, EquilibriumSolution, MechanismParams, Point2};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const COILS: usize = 10;

/// Side of the surface holding O2, relative to the fixed origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    OriginSide,
    FarSide,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::OriginSide => "origin side",
            Side::FarSide => "far side",
        }
    }

    fn colour(self) -> &'static str {
        match self {
            Side::OriginSide => "#1f77b4",
            Side::FarSide => "#d62728",
        }
    }
}

/// Real-part platform points of one solution.
#[derive(Debug, Clone, Copy)]
pub struct Drawing {
    pub o1: Point2,
    pub a1: Point2,
    pub e: Point2,
    pub p: Point2,
    pub o2: Point2,
    pub a2: Point2,
    pub side: Side,
}

pub fn drawing(params: &MechanismParams, p_e: Point2, s: &EquilibriumSolution) -> Drawing {
    let pose = pose_from(s.l, s.beta, params, p_e);
    let o2 = pose.p_o2.re();
    let plane = params.plane();
    let side = if plane.evaluate(o2).signum() == plane.offset.signum() { Side::OriginSide } else { Side::FarSide };
    Drawing { o1: params.p_o1, a1: params.a1_fixed(), e: p_e, p: pose.p_p.re(), o2, a2: pose.p_a2.re(), side }
}

struct View {
    min: Point2,
    scale: f64,
    height: f64,
}

impl View {
    fn fit(points: &[Point2]) -> View {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = Point2::new((hi.x - lo.x).max(1e-9), (hi.y - lo.y).max(1e-9));
        let scale = (WIDTH - 2.0 * MARGIN) / span.x.max(span.y);
        View { min: lo, scale, height: span.y * scale + 2.0 * MARGIN + 30.0 }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (MARGIN + (p.x - self.min.x) * self.scale, self.height - MARGIN - (p.y - self.min.y) * self.scale)
    }

    fn world_width(&self) -> f64 {
        WIDTH / self.scale
    }
}

fn header(out: &mut String, view: &View, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{h:.1}" viewBox="0 0 {WIDTH} {h:.1}" font-family="sans-serif" font-size="12">"#,
        h = view.height
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="20" font-size="14">{title}</text>"#);
}

fn line(out: &mut String, view: &View, a: Point2, b: Point2, style: &str) {
    let ((x1, y1), (x2, y2)) = (view.map(a), view.map(b));
    let _ = writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {style}/>"#);
}

fn spring(out: &mut String, view: &View, a: Point2, b: Point2, colour: &str) {
    let d = b - a;
    let len = d.norm();
    let mut pts = vec![view.map(a)];
    if len > 0.0 {
        let normal = Point2::new(-d.y, d.x);
        let amp = 0.012 * view.world_width() / len;
        let n = 2 * COILS;
        for i in 1..n {
            let t = 0.1 + 0.8 * i as f64 / n as f64;
            let side = if i % 2 == 0 { -1.0 } else { 1.0 };
            pts.push(view.map(a + t * d + (side * amp) * normal));
        }
    }
    pts.push(view.map(b));
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ =
        writeln!(out, r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1"/>"#, coords.join(" "));
}

fn label(out: &mut String, view: &View, p: Point2, text: &str) {
    let (x, y) = view.map(p);
    let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5"/>"#);
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{text}</text>"#, x + 4.0, y - 4.0);
}

fn surface(out: &mut String, view: &View, params: &MechanismParams) {
    let dir = params.surface_direction();
    let reach = 4.0 * view.world_width();
    line(out, view, params.p_m - reach * dir, params.p_m + reach * dir, r##"stroke="#555" stroke-width="2""##);
}

fn platform(out: &mut String, view: &View, d: &Drawing, colour: &str, labels: bool) {
    spring(out, view, d.o1, d.o2, colour);
    spring(out, view, d.o1, d.a2, colour);
    spring(out, view, d.a1, d.a2, colour);
    let pts = [d.o2, d.a2, d.p].map(|p| view.map(p));
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="{colour}" fill-opacity="0.15" stroke="{colour}" stroke-width="2"/>"#,
        coords.join(" ")
    );
    if labels {
        label(out, view, d.o2, "O2");
        label(out, view, d.a2, "A2");
        label(out, view, d.p, "P");
    }
}

fn base(out: &mut String, view: &View, d: &Drawing) {
    line(out, view, d.o1, d.a1, r#"stroke="black" stroke-width="3""#);
    label(out, view, d.o1, "O1");
    label(out, view, d.a1, "A1");
    label(out, view, d.e, "E");
}

fn view_for(drawings: &[Drawing]) -> View {
    let pts: Vec<Point2> = drawings.iter().flat_map(|d| [d.o1, d.a1, d.e, d.p, d.o2, d.a2]).collect();
    View::fit(&pts)
}

pub fn solution_svg(params: &MechanismParams, p_e: Point2, s: &EquilibriumSolution) -> String {
    let d = drawing(params, p_e, s);
    let view = view_for(&[d]);
    let mut out = String::new();
    let force = s.contact_force.map(|f| format!(", contact force {f:.4} N")).unwrap_or_default();
    let title = format!(
        "Solution {}: beta = {:.4} rad, L = {:.4} m, O2 on the {}{force}",
        s.index,
        s.beta.re,
        s.l.re,
        d.side.label()
    );
    header(&mut out, &view, &title);
    surface(&mut out, &view, params);
    base(&mut out, &view, &d);
    platform(&mut out, &view, &d, d.side.colour(), true);
    out.push_str("</svg>\n");
    out
}

fn drawn(report: &AnalysisReport) -> impl Iterator<Item = &EquilibriumSolution> {
    report.solutions.iter().filter(|s| s.is_real && s.accepted)
}

/// All real accepted solutions overlaid, coloured by surface side.
pub fn overview_svg(params: &MechanismParams, report: &AnalysisReport) -> String {
    let mut out = String::new();
    let Some(p_e) = report.point_e else {
        let view = View::fit(&[params.p_o1, params.a1_fixed(), params.p_m]);
        header(&mut out, &view, "No equilibrium solve");
        surface(&mut out, &view, params);
        out.push_str("</svg>\n");
        return out;
    };
    let drawings: Vec<Drawing> = drawn(report).map(|s| drawing(params, p_e, s)).collect();
    let fallback =
        Drawing { o1: params.p_o1, a1: params.a1_fixed(), e: p_e, p: p_e, o2: p_e, a2: p_e, side: Side::OriginSide };
    let view = view_for(if drawings.is_empty() { std::slice::from_ref(&fallback) } else { &drawings });
    let count = |side| drawings.iter().filter(|d| d.side == side).count();
    let title = format!(
        "{} real solutions: {} with O2 on the origin side, {} on the far side",
        drawings.len(),
        count(Side::OriginSide),
        count(Side::FarSide)
    );
    header(&mut out, &view, &title);
    surface(&mut out, &view, params);
    base(&mut out, &view, &fallback);
    for d in &drawings {
        platform(&mut out, &view, d, d.side.colour(), false);
    }
    out.push_str("</svg>\n");
    out
}

/// Writes `solution_<k>.svg` per real accepted solution and `overview.svg`.
pub fn write_svgs(params: &MechanismParams, report: &AnalysisReport, dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if let Some(p_e) = report.point_e {
        for s in drawn(report) {
            let path = dir.join(format!("solution_{}.svg", s.index));
            fs::write(&path, solution_svg(params, p_e, s))?;
            written.push(path);
        }
    }
    let path = dir.join("overview.svg");
    fs::write(&path, overview_svg(params, report))?;
    written.push(path);
    Ok(written)
}
