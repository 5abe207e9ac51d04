//! SVG output of a laid-out pattern.

use std::fmt::Write;

use circlepat::layout::{normalize_moebius, plane_to_sphere};
use circlepat::{Circle, Geometry, Layout, Moebius, Point};

use crate::CliError;

pub const CANVAS: f64 = 800.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum View {
    /// Layout coordinates, window fitted to the pattern.
    Plane,
    /// Vertices moved to barycentric position on the sphere, fixed window
    /// around the unit circle.
    Stereographic,
}

#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub view: View,
    /// Half-width of the largest window the plane view may use.
    pub extent: f64,
}

enum Shape {
    Circle { cx: f64, cy: f64, r: f64 },
    Line { nx: f64, ny: f64, c: f64 },
}

/// A circle with `|h₁₁|` this small relative to the other entries is drawn as
/// the line it degenerates to.
const LINE_THRESHOLD: f64 = 1e-12;

fn shape(h: &Circle) -> Shape {
    let scale = h.h12.norm().max(h.h22.abs());
    if h.h11.abs() <= LINE_THRESHOLD * scale {
        // 2 Re(h₁₂ z̄) + h₂₂ = 0
        Shape::Line { nx: 2.0 * h.h12.re, ny: 2.0 * h.h12.im, c: h.h22 }
    } else {
        let (c, r) = h.euclidean_center_radius().expect("h11 is nonzero");
        Shape::Circle { cx: c.re, cy: c.im, r }
    }
}

struct Window {
    x0: f64,
    y0: f64,
    size: f64,
}

impl Window {
    fn px(&self, x: f64) -> f64 {
        (x - self.x0) / self.size * CANVAS
    }

    fn py(&self, y: f64) -> f64 {
        (self.y0 + self.size - y) / self.size * CANVAS
    }

    /// Endpoints of the part of `nx·x + ny·y + c = 0` inside the window.
    fn clip(&self, nx: f64, ny: f64, c: f64) -> Option<[(f64, f64); 2]> {
        let (x1, y1) = (self.x0 + self.size, self.y0 + self.size);
        let mut hits = Vec::new();
        if ny.abs() > 0.0 {
            for x in [self.x0, x1] {
                let y = -(c + nx * x) / ny;
                if y >= self.y0 && y <= y1 {
                    hits.push((x, y));
                }
            }
        }
        if nx.abs() > 0.0 {
            for y in [self.y0, y1] {
                let x = -(c + ny * y) / nx;
                if x >= self.x0 && x <= x1 {
                    hits.push((x, y));
                }
            }
        }
        hits.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
        (hits.len() >= 2).then(|| [hits[0], hits[hits.len() - 1]])
    }
}

/// Square window around the finite circles and vertex points, capped at
/// `[-extent, extent]²`.
fn fitted(shapes: &[Shape], points: &[(f64, f64)], extent: f64) -> Window {
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut take = |x0: f64, y0: f64, x1: f64, y1: f64| {
        lo_x = lo_x.min(x0.max(-extent));
        lo_y = lo_y.min(y0.max(-extent));
        hi_x = hi_x.max(x1.min(extent));
        hi_y = hi_y.max(y1.min(extent));
    };
    for s in shapes {
        if let Shape::Circle { cx, cy, r } = *s {
            take(cx - r, cy - r, cx + r, cy + r);
        }
    }
    for &(x, y) in points {
        take(x, y, x, y);
    }
    if !(lo_x < hi_x || lo_y < hi_y) {
        return Window { x0: -extent, y0: -extent, size: 2.0 * extent };
    }
    let size = (hi_x - lo_x).max(hi_y - lo_y) * 1.05;
    let (mx, my) = (0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y));
    Window { x0: mx - 0.5 * size, y0: my - 0.5 * size, size }
}

/// Möbius map centering the vertex points on the sphere, when there are
/// enough distinct ones.
fn centering(points: &[Point]) -> Option<Moebius> {
    let mut on_sphere: Vec<[f64; 3]> = Vec::new();
    for p in points {
        let v = plane_to_sphere(p);
        if on_sphere.iter().all(|w| (0..3).map(|i| (v[i] - w[i]).powi(2)).sum::<f64>() > 1e-20) {
            on_sphere.push(v);
        }
    }
    normalize_moebius(&on_sphere).ok()
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render_svg(layout: &Layout, style: &Style) -> Result<String, CliError> {
    let mut circles: Vec<Circle> = layout.circles.iter().flatten().copied().collect();
    let mut points: Vec<Point> = layout.vertices.iter().flatten().copied().collect();
    if circles.is_empty() {
        return Err(CliError::Failed("layout has no circles to draw".into()));
    }
    if style.view == View::Stereographic {
        if let Some(t) = centering(&points) {
            circles = circles.iter().map(|c| c.transform(&t)).collect();
            points = points.iter().map(|p| t.apply(p)).collect();
        }
    }
    let shapes: Vec<Shape> = circles.iter().map(shape).collect();
    let finite: Vec<(f64, f64)> = points.iter().filter_map(|p| p.to_complex()).map(|z| (z.re, z.im)).collect();
    let window = match style.view {
        View::Plane => fitted(&shapes, &finite, style.extent),
        View::Stereographic => Window { x0: -3.0, y0: -3.0, size: 6.0 },
    };

    let mut out = String::new();
    let w = &window;
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#);
    let _ = writeln!(
        out,
        "<!-- view {}: the square [{}, {}] x [{}, {}] maps onto the 800 x 800 canvas, y axis up -->",
        match style.view {
            View::Plane => "plane",
            View::Stereographic => "stereographic",
        },
        num(w.x0),
        num(w.x0 + w.size),
        num(w.y0),
        num(w.y0 + w.size)
    );
    let _ = writeln!(out, r#"<rect width="800" height="800" fill="white"/>"#);
    let unit_circle = style.view == View::Stereographic || layout.geometry == Geometry::Hyperbolic;
    if unit_circle {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="gray" stroke-dasharray="4 4"/>"#,
            num(w.px(0.0)),
            num(w.py(0.0)),
            num(CANVAS / w.size)
        );
    }
    for s in &shapes {
        match *s {
            Shape::Circle { cx, cy, r } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="black"/>"#,
                    num(w.px(cx)),
                    num(w.py(cy)),
                    num(r / w.size * CANVAS)
                );
            }
            Shape::Line { nx, ny, c } => {
                if let Some([(ax, ay), (bx, by)]) = w.clip(nx, ny, c) {
                    let _ = writeln!(
                        out,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
                        num(w.px(ax)),
                        num(w.py(ay)),
                        num(w.px(bx)),
                        num(w.py(by))
                    );
                }
            }
        }
    }
    for &(x, y) in &finite {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="2.5" fill="black"/>"#, num(w.px(x)), num(w.py(y)));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    #[test]
    fn lines_are_clipped_to_the_window() {
        let w = Window { x0: -1.0, y0: -1.0, size: 2.0 };
        // x = 0.5
        let [(ax, ay), (bx, by)] = w.clip(1.0, 0.0, -0.5).unwrap();
        assert_eq!((ax, bx), (0.5, 0.5));
        assert_eq!((ay.min(by), ay.max(by)), (-1.0, 1.0));
        assert!(w.clip(1.0, 0.0, -5.0).is_none());
    }

    #[test]
    fn degenerate_circles_become_lines() {
        let h = Circle::new(0.0, Complex::new(0.5, 0.0), -1.0).unwrap();
        assert!(matches!(shape(&h), Shape::Line { .. }));
        let h = Circle::new(1.0, Complex::new(0.0, 0.0), -4.0).unwrap();
        let Shape::Circle { cx, cy, r } = shape(&h) else { panic!() };
        assert_eq!((cx, cy, r), (0.0, 0.0, 2.0));
    }

    #[test]
    fn negative_zero_is_printed_as_zero() {
        assert_eq!(num(-0.0), "0.000");
        assert_eq!(num(-1e-9), "0.000");
        assert_eq!(num(1.23456), "1.235");
    }

    #[test]
    fn empty_layout_is_an_error() {
        let layout = Layout {
            geometry: Geometry::Euclidean,
            centers: vec![None; 2],
            vertices: vec![None; 2],
            circles: vec![None; 2],
            frames: vec![None; 2],
            across: Vec::new(),
            holonomy_residual: 0.0,
            deck: Vec::new(),
            unreached_faces: vec![0],
        };
        let style = Style { view: View::Plane, extent: 10.0 };
        let err = render_svg(&layout, &style).unwrap_err();
        assert_eq!(err.exit_code(), crate::exit::FAILED);
    }
}
