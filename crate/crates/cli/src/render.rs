//! Deterministic SVG output. Exact coordinates are converted to decimals
//! here and only here.

use std::fmt::Write;

use tropjac::bunch::{Classification, EdgeKind};
use tropjac::exact::to_f64;
use tropjac::newton::NewtonComplex;
use tropjac::{Divisor, TropicalCurve};

const PANEL: f64 = 360.0;
const PAD: f64 = 20.0;

pub struct CurveLayer {
    pub curve: TropicalCurve,
    pub color: &'static str,
    /// Colors tentacles, rays and cycle edges apart when present.
    pub classes: Option<Classification>,
}

#[derive(Default)]
pub struct Scene {
    pub curves: Vec<CurveLayer>,
    pub divisor: Option<Divisor>,
    pub complex: Option<NewtonComplex>,
    /// Extra room around the finite features, in curve units; rays end there.
    pub margin: f64,
}

impl Scene {
    pub fn new() -> Self {
        Scene { margin: 1.5, ..Default::default() }
    }

    pub fn curve(mut self, curve: TropicalCurve, color: &'static str) -> Self {
        self.curves.push(CurveLayer { curve, color, classes: None });
        self
    }

    fn is_empty(&self) -> bool {
        self.curves.iter().all(|c| c.curve.is_empty()) && self.divisor.is_none() && self.complex.is_none()
    }
}

struct Viewport {
    lo: (f64, f64),
    hi: (f64, f64),
    scale: f64,
    offset_x: f64,
}

impl Viewport {
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (self.offset_x + PAD + (x - self.lo.0) * self.scale, PAD + (self.hi.1 - y) * self.scale)
    }

    fn fit(points: &[(f64, f64)], margin: f64, offset_x: f64) -> Self {
        let (mut lo, mut hi) = ((0.0f64, 0.0f64), (0.0f64, 0.0f64));
        if let Some(&first) = points.first() {
            lo = first;
            hi = first;
            for &(x, y) in points {
                lo = (lo.0.min(x), lo.1.min(y));
                hi = (hi.0.max(x), hi.1.max(y));
            }
        }
        lo = (lo.0 - margin, lo.1 - margin);
        hi = (hi.0 + margin, hi.1 + margin);
        let span = (hi.0 - lo.0).max(hi.1 - lo.1);
        Viewport { lo, hi, scale: PANEL / span, offset_x }
    }

    /// End of a ray from `p` along `d`, clipped to the viewport.
    fn ray_end(&self, p: (f64, f64), d: (f64, f64)) -> (f64, f64) {
        let mut t = f64::INFINITY;
        for (pc, dc, lo, hi) in [(p.0, d.0, self.lo.0, self.hi.0), (p.1, d.1, self.lo.1, self.hi.1)] {
            if dc > 0.0 {
                t = t.min((hi - pc) / dc);
            } else if dc < 0.0 {
                t = t.min((lo - pc) / dc);
            }
        }
        (p.0 + t.max(0.0) * d.0, p.1 + t.max(0.0) * d.1)
    }
}

fn coords(p: &tropjac::RationalPoint) -> (f64, f64) {
    (to_f64(&p.x), to_f64(&p.y))
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), color: &str, width: u64) {
    writeln!(
        out,
        r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{color}" stroke-width="{}"/>"#,
        a.0,
        a.1,
        b.0,
        b.1,
        1 + width
    )
    .unwrap();
}

fn draw_curve(out: &mut String, vp: &Viewport, layer: &CurveLayer) {
    let c = &layer.curve;
    for (k, e) in c.edges().iter().enumerate() {
        let color = match layer.classes.as_ref().map(|cl| cl.edges[k]) {
            Some(EdgeKind::Tentacle) => "#d95f02",
            Some(EdgeKind::Cycle) => "#1b9e77",
            None => layer.color,
        };
        line(out, vp.map(coords(c.vertex(e.ends[0]))), vp.map(coords(c.vertex(e.ends[1]))), color, e.weight);
    }
    for r in c.rays() {
        let color = if layer.classes.is_some() { "#7570b3" } else { layer.color };
        let p = coords(c.vertex(r.vertex));
        let end = vp.ray_end(p, (r.direction.x() as f64, r.direction.y() as f64));
        line(out, vp.map(p), vp.map(end), color, r.weight);
    }
    for v in c.vertices() {
        let (x, y) = vp.map(coords(v));
        writeln!(out, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="2.5" fill="{}"/>"#, layer.color).unwrap();
    }
}

fn draw_divisor(out: &mut String, vp: &Viewport, d: &Divisor) {
    for (p, m) in d.terms() {
        let (x, y) = vp.map(coords(p));
        let fill = if m > 0 { "#e7298a" } else { "#666666" };
        writeln!(out, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="5" fill="{fill}"/>"#).unwrap();
        writeln!(out, r#"  <text x="{:.3}" y="{:.3}" font-size="12">{m}</text>"#, x + 6.0, y - 6.0).unwrap();
    }
}

fn draw_complex(out: &mut String, n: &NewtonComplex, offset_x: f64) {
    let pts: Vec<(f64, f64)> = n.points.iter().map(|p| (p.x as f64, p.y as f64)).collect();
    let vp = Viewport::fit(&pts, 0.5, offset_x);
    for (a, b) in n.segments() {
        line(out, vp.map((a.x as f64, a.y as f64)), vp.map((b.x as f64, b.y as f64)), "#333333", 0);
    }
    for p in n.vertex_set() {
        let (x, y) = vp.map((p.x as f64, p.y as f64));
        writeln!(out, r##"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#333333"/>"##).unwrap();
    }
}

/// SVG 1.1 document for the scene; a Newton complex goes in a second panel
/// to the right of the curves.
pub fn render(scene: &Scene) -> String {
    let header = |w: f64, h: f64| {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w:.0}\" height=\"{h:.0}\">\n"
        )
    };
    if scene.is_empty() {
        return header(2.0 * PAD, 2.0 * PAD) + "</svg>\n";
    }
    let mut finite: Vec<(f64, f64)> = scene.curves.iter().flat_map(|l| l.curve.vertices().iter().map(coords)).collect();
    if let Some(d) = &scene.divisor {
        finite.extend(d.terms().map(|(p, _)| coords(p)));
    }
    let panels = if scene.complex.is_some() { 2.0 } else { 1.0 };
    let mut out = header(panels * (PANEL + 2.0 * PAD), PANEL + 2.0 * PAD);
    let vp = Viewport::fit(&finite, scene.margin, 0.0);
    for layer in &scene.curves {
        out.push_str("<g>\n");
        draw_curve(&mut out, &vp, layer);
        out.push_str("</g>\n");
    }
    if let Some(d) = &scene.divisor {
        out.push_str("<g>\n");
        draw_divisor(&mut out, &vp, d);
        out.push_str("</g>\n");
    }
    if let Some(n) = &scene.complex {
        out.push_str("<g>\n");
        draw_complex(&mut out, n, PANEL + 2.0 * PAD);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
